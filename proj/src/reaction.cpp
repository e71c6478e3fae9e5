#include "nlfront/reaction.hpp"

#include <cmath>

namespace nlfront {

std::string to_string(ReactionFamily family) {
    return family == ReactionFamily::Logistic ? "logistic" : "weak_allee";
}

ReactionSpec ReactionSpec::logistic() { return ReactionSpec(ReactionFamily::Logistic, 0.0); }

ReactionSpec ReactionSpec::weak_allee(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("weak_allee requires a > 0");
    return ReactionSpec(ReactionFamily::WeakAllee, a);
}

ReactionSpec::ReactionSpec(ReactionFamily family, double a) : family_(family), a_(a) {
    // s(1-s)(1+as) >= s(1-s) = s - s^2 on [0,1], so the logistic envelope
    // (M = 1, delta = 1, s0 = 1) serves both families.
    envelope_ = {1.0, 1.0, 1.0};
    verify_envelope();
}

void ReactionSpec::verify_envelope() const {
    const int n = 10000;
    for (int i = 0; i <= n; ++i) {
        const double s = envelope_.s0 * static_cast<double>(i) / n;
        const double lower = fprime0() * s - envelope_.M * std::pow(s, 1.0 + envelope_.delta);
        if (f(s) < lower - 1e-12)
            throw std::logic_error("reaction envelope verification failed at s=" + std::to_string(s));
    }
}

double ReactionSpec::evaluate_f(double s) const {
    if (s < -1e-8 || s > 1.0 + 1e-8)
        throw std::domain_error("evaluate_f: s outside [0,1] beyond tolerance");
    return f(s);
}

double ReactionSpec::sup_per_capita_rate() const {
    if (family_ == ReactionFamily::Logistic) return 1.0;
    // f(s)/s = (1-s)(1+as) is a downward parabola with vertex at (a-1)/(2a)
    if (a_ <= 1.0) return 1.0;  // vertex left of 0, sup at s -> 0+
    const double d = a_ - 1.0;
    return 1.0 + d * d / (4.0 * a_);
}

double ReactionSpec::max_abs_fprime() const {
    if (family_ == ReactionFamily::Logistic) return 1.0;
    // f'(s) = 1 + 2(a-1)s - 3a s^2; candidates: endpoints and interior vertex
    double best = std::max(std::abs(fprime(0.0)), std::abs(fprime(1.0)));
    const double sv = (a_ - 1.0) / (3.0 * a_);
    if (sv > 0.0 && sv < 1.0) best = std::max(best, std::abs(fprime(sv)));
    return best;
}

} // namespace nlfront
