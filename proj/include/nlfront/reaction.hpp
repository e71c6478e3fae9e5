#pragma once

#include <string>

#include "nlfront/errors.hpp"

namespace nlfront {

enum class ReactionFamily { Logistic, WeakAllee };

std::string to_string(ReactionFamily family);

struct KppEnvelope {
    double M = 1.0;
    double delta = 1.0;
    double s0 = 1.0;
};

/// Monostable nonlinearity: f(0) = f(1) = 0, f > 0 on (0,1), f'(0) > 0,
/// with the lower envelope f(s) >= f'(0) s - M s^(1+delta) on [0, s0].
///
/// Catalog: Logistic f(s) = s(1-s) and WeakAllee(a) f(s) = s(1-s)(1+as),
/// whose per-capita maximum sits at s > 0 for a > 1.
class ReactionSpec {
  public:
    static ReactionSpec logistic();
    static ReactionSpec weak_allee(double a);

    ReactionFamily family() const { return family_; }
    double allee_a() const { return a_; }

    /// f(s) with the domain check (a +-1e-8 band around [0,1] is tolerated).
    double evaluate_f(double s) const;
    /// f(s) with no domain check (integrator hot path).
    double f(double s) const {
        return family_ == ReactionFamily::Logistic ? s * (1.0 - s)
                                                   : s * (1.0 - s) * (1.0 + a_ * s);
    }
    double fprime(double s) const {
        return family_ == ReactionFamily::Logistic
                   ? 1.0 - 2.0 * s
                   : 1.0 + 2.0 * (a_ - 1.0) * s - 3.0 * a_ * s * s;
    }

    double fprime0() const { return 1.0; }
    /// r = sup over (0,1] of f(s)/s, computed from the quadratic vertex.
    double sup_per_capita_rate() const;
    KppEnvelope kpp_envelope() const { return envelope_; }
    /// max over [0,1] of |f'|, for the explicit stability bound.
    double max_abs_fprime() const;

  private:
    ReactionSpec(ReactionFamily family, double a);
    void verify_envelope() const;

    ReactionFamily family_;
    double a_ = 0.0;
    KppEnvelope envelope_;
};

} // namespace nlfront
