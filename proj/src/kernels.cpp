#include "nlfront/kernels.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "nlfront/quadrature.hpp"

namespace nlfront {

namespace {

constexpr double kSpliceE2 = 7.38905609893065;  // e^2, start of the monotone
                                                // region of x/ln(x)

// x/ln(x) >= sqrt(x) for all x > 1, so exp(-a x/ln x) <= exp(-a sqrt(x)).
// Used for tail bounds of the log-sublinear family.
double sqrt_tail_integral(double a, double x) {
    // integral over [x, inf) of exp(-a sqrt(s)) ds
    const double r = std::sqrt(x);
    return 2.0 * (1.0 + a * r) * std::exp(-a * r) / (a * a);
}

double sqrt_tail_first_moment(double a, double x) {
    // integral over [x, inf) of s exp(-a sqrt(s)) ds = 2 int u^3 e^(-au) du
    const double u = std::sqrt(x);
    const double e = std::exp(-a * u);
    return 2.0 * e * (u * u * u / a + 3.0 * u * u / (a * a) + 6.0 * u / (a * a * a) + 6.0 / (a * a * a * a));
}

} // namespace

std::string to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::LogSublinear: return "log_sublinear";
        case KernelFamily::StretchedExp: return "stretched_exp";
        case KernelFamily::Algebraic: return "algebraic";
        case KernelFamily::Laplace: return "laplace";
    }
    return "?";
}

KernelSpec KernelSpec::log_sublinear(double alpha, double C) {
    if (!(alpha > 0.0) || !(C > 0.0))
        throw std::invalid_argument("log_sublinear kernel requires alpha > 0, C > 0");
    return KernelSpec(KernelFamily::LogSublinear, alpha, 0.0, C);
}

KernelSpec KernelSpec::stretched_exp(double alpha, double beta, double C) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0) || !(C > 0.0))
        throw std::invalid_argument("stretched_exp kernel requires alpha in (0,1), beta > 0, C > 0");
    return KernelSpec(KernelFamily::StretchedExp, alpha, beta, C);
}

KernelSpec KernelSpec::algebraic(double alpha, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("algebraic kernel requires C > 0");
    if (!(alpha > 2.0))
        throw DivergenceError("algebraic kernel requires alpha > 2 for a finite first moment");
    return KernelSpec(KernelFamily::Algebraic, alpha, 0.0, C);
}

KernelSpec KernelSpec::laplace(double rate, double C) {
    if (!(rate > 0.0) || !(C > 0.0))
        throw std::invalid_argument("laplace kernel requires rate > 0, C > 0");
    return KernelSpec(KernelFamily::Laplace, rate, 0.0, C);
}

KernelSpec::KernelSpec(KernelFamily family, double a, double b, double c)
    : family_(family), a_(a), b_(b), user_c_(c) {
    splice_ = (family_ == KernelFamily::LogSublinear) ? kSpliceE2 : 0.0;
    amp_ = 1.0 / shape_mass();
    core_ = amp_ * shape(splice_);
}

double KernelSpec::shape(double s) const {
    s = std::max(s, splice_);
    switch (family_) {
        case KernelFamily::LogSublinear: return std::exp(-a_ * s / std::log(s));
        case KernelFamily::StretchedExp: return std::exp(-b_ * std::pow(s, a_));
        case KernelFamily::Algebraic: return std::pow(1.0 + s, -a_);
        case KernelFamily::Laplace: return std::exp(-a_ * s);
    }
    return 0.0;
}

double KernelSpec::shape_mass() const {
    switch (family_) {
        case KernelFamily::Laplace:
            return 2.0 / a_;
        case KernelFamily::Algebraic:
            return 2.0 / (a_ - 1.0);
        case KernelFamily::StretchedExp:
            return 2.0 * std::tgamma(1.0 + 1.0 / a_) / std::pow(b_, 1.0 / a_);
        case KernelFamily::LogSublinear: {
            // constant core + quadrature on the tail formula, truncated where
            // the sqrt bound certifies a remainder below 1e-14
            double Y = std::max(4.0 * splice_, 64.0);
            while (sqrt_tail_integral(a_, Y) > 1e-14) Y *= 2.0;
            const auto f = [this](double s) { return shape(s); };
            const double tail = quad::adaptive(f, splice_, Y, 1e-14) + sqrt_tail_integral(a_, Y);
            return 2.0 * (splice_ * shape(splice_) + tail);
        }
    }
    return 0.0;
}

double KernelSpec::shape_first_moment() const {
    switch (family_) {
        case KernelFamily::Laplace:
            return 2.0 / (a_ * a_);
        case KernelFamily::Algebraic:
            return 2.0 / ((a_ - 1.0) * (a_ - 2.0));
        case KernelFamily::StretchedExp:
            return 2.0 * std::tgamma(2.0 / a_) / (a_ * std::pow(b_, 2.0 / a_));
        case KernelFamily::LogSublinear: {
            double Y = std::max(4.0 * splice_, 64.0);
            while (sqrt_tail_first_moment(a_, Y) > 1e-14) Y *= 2.0;
            const auto f = [this](double s) { return s * shape(s); };
            const double tail = quad::adaptive(f, splice_, Y, 1e-13) + sqrt_tail_first_moment(a_, Y);
            return 2.0 * (0.5 * splice_ * splice_ * shape(splice_) + tail);
        }
    }
    return 0.0;
}

double KernelSpec::evaluate(double x) const { return amp_ * shape(std::abs(x)); }

MassMoment KernelSpec::mass_and_first_moment() const {
    return {amp_ * shape_mass(), amp_ * shape_first_moment()};
}

double KernelSpec::first_moment_half() const { return 0.5 * amp_ * shape_first_moment(); }

double KernelSpec::inverse_tail(double y) const {
    if (!(y > 0.0) || y > core_ * (1.0 + 1e-12))
        throw std::domain_error("inverse_tail: y must lie in (0, J(0)]");
    if (y >= core_) return 0.0;
    const double z = std::log(amp_ / y);  // = -log(shape), positive here
    switch (family_) {
        case KernelFamily::Laplace:
            return z / a_;
        case KernelFamily::StretchedExp:
            return std::pow(z / b_, 1.0 / a_);
        case KernelFamily::Algebraic:
            return std::expm1(z / a_);
        case KernelFamily::LogSublinear: {
            // solve s / ln(s) = z / alpha on [e^2, inf), monotone increasing
            const double target = z / a_;
            double lo = splice_;
            double hi = std::max(2.0 * splice_, 4.0 * target);
            while (hi / std::log(hi) < target) hi *= 2.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid / std::log(mid) < target) lo = mid; else hi = mid;
                if (hi - lo <= 1e-12 * hi) break;
            }
            return 0.5 * (lo + hi);
        }
    }
    return 0.0;
}

double KernelSpec::log_derivative_ratio(double x) const {
    if (!(x > splice_))
        throw std::domain_error("log_derivative_ratio: x must lie beyond the splice radius");
    switch (family_) {
        case KernelFamily::Laplace: return a_;
        case KernelFamily::StretchedExp: return a_ * b_ * std::pow(x, a_ - 1.0);
        case KernelFamily::Algebraic: return a_ / (1.0 + x);
        case KernelFamily::LogSublinear: {
            const double L = std::log(x);
            return a_ * (L - 1.0) / (L * L);
        }
    }
    return 0.0;
}

HypothesisReport KernelSpec::classify() const {
    HypothesisReport report;
    switch (family_) {
        case KernelFamily::Laplace:
            // ratio == rate does not vanish at infinity
            report.exponentially_unbounded = false;
            break;
        case KernelFamily::StretchedExp:
            report.exponentially_unbounded = true;
            report.hyp1 = {true, 0.0, 0.5};  // ratio ~ x^(alpha-1) decreasing everywhere
            break;
        case KernelFamily::Algebraic:
            report.exponentially_unbounded = true;
            report.hyp1 = {true, 0.0, 0.5 * (1.0 + 1.0 / a_)};  // needs eps0 > 1/alpha
            report.hyp2 = {true, a_};  // x * alpha/(1+x) <= alpha
            break;
        case KernelFamily::LogSublinear:
            report.exponentially_unbounded = true;
            // ratio = a (ln x - 1)/ln^2 x decreases beyond ln x = 2
            report.hyp1 = {true, kSpliceE2, 0.5};
            // x * ratio ~ a x / ln x is unbounded, so hyp2 fails
            break;
    }
    return report;
}

double KernelSpec::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    switch (family_) {
        case KernelFamily::Laplace:
            return amp_ * (1.0 - std::exp(-a_ * x)) / a_;
        case KernelFamily::Algebraic:
            return amp_ * (1.0 - std::pow(1.0 + x, 1.0 - a_)) / (a_ - 1.0);
        case KernelFamily::StretchedExp: {
            const double inv_a = 1.0 / a_;
            return amp_ * inv_a * std::pow(b_, -inv_a) *
                   boost::math::tgamma_lower(inv_a, b_ * std::pow(x, a_));
        }
        case KernelFamily::LogSublinear: {
            const double core_part = amp_ * std::min(x, splice_) * shape(splice_);
            if (x <= splice_) return core_part;
            const auto f = [this](double s) { return amp_ * shape(s); };
            return core_part + quad::adaptive(f, splice_, x, 1e-13);
        }
    }
    return 0.0;
}

double KernelSpec::tail_mass(double x) const {
    if (x <= 0.0) return 0.5;
    switch (family_) {
        case KernelFamily::Laplace:
            return amp_ * std::exp(-a_ * x) / a_;
        case KernelFamily::Algebraic:
            return amp_ * std::pow(1.0 + x, 1.0 - a_) / (a_ - 1.0);
        case KernelFamily::StretchedExp: {
            const double inv_a = 1.0 / a_;
            return amp_ * inv_a * std::pow(b_, -inv_a) *
                   boost::math::tgamma(inv_a, b_ * std::pow(x, a_));
        }
        case KernelFamily::LogSublinear:
            if (x < splice_) return 0.5 - cdf(x);
            return amp_ * sqrt_tail_integral(a_, x);  // upper bound
    }
    return 0.0;
}

double KernelSpec::tail_mass_pow(double p, double x) const {
    const double ap = std::pow(amp_, p);
    switch (family_) {
        case KernelFamily::Laplace:
            return ap * std::exp(-p * a_ * x) / (p * a_);
        case KernelFamily::Algebraic: {
            if (p * a_ <= 1.0)
                throw DivergenceError("tail_mass_pow: J^p not integrable for p*alpha <= 1");
            return ap * std::pow(1.0 + x, 1.0 - p * a_) / (p * a_ - 1.0);
        }
        case KernelFamily::StretchedExp: {
            const double inv_a = 1.0 / a_;
            return ap * inv_a * std::pow(p * b_, -inv_a) *
                   boost::math::tgamma(inv_a, p * b_ * std::pow(x, a_));
        }
        case KernelFamily::LogSublinear:
            return ap * sqrt_tail_integral(p * a_, std::max(x, splice_));
    }
    return 0.0;
}

TruncatedKernel KernelSpec::truncate(double eps) const {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("truncate: eps must lie in (0,1)");
    const double target = 0.5 * (1.0 - eps);  // per side
    double lo = 0.0, hi = 1.0;
    while (cdf(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < target) lo = mid; else hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    TruncatedKernel trunc{*this, 0.5 * (lo + hi), 1.0 - eps};
    return trunc;
}

double KernelSpec::exponential_moment(double eta) const {
    if (!(eta >= 0.0)) throw std::domain_error("exponential_moment: eta must be >= 0");
    if (eta == 0.0) return amp_ * shape_mass();
    if (family_ == KernelFamily::Laplace) {
        if (eta >= a_)
            throw DivergenceError("exponential_moment diverges for eta >= rate");
        return amp_ * 2.0 * a_ / (a_ * a_ - eta * eta);
    }
    throw DivergenceError(
        "exponential_moment diverges: exponentially unbounded kernel with eta > 0 "
        "(infinite spreading speed)");
}

double TruncatedKernel::evaluate(double x) const {
    if (std::abs(x) > A_eps) return 0.0;
    return parent.evaluate(x) / D_eps;
}

double TruncatedKernel::exponential_moment(double eta) const {
    if (eta == 0.0) return 1.0;
    if (eta * A_eps > 690.0)
        throw DivergenceError("exponential_moment: overflow, eta*A too large");
    const auto f = [this, eta](double z) { return parent.evaluate(z) * 2.0 * std::cosh(eta * z); };
    std::vector<double> splits;
    if (parent.splice_radius() > 0.0 && parent.splice_radius() < A_eps)
        splits.push_back(parent.splice_radius());
    const double rough = quad::adaptive_segments(f, 0.0, A_eps, splits, 1e-8);
    const double refined = quad::adaptive_segments(f, 0.0, A_eps, splits,
                                                   std::max(1e-14, 1e-11 * std::abs(rough)));
    return refined / D_eps;
}

} // namespace nlfront
