#pragma once

#include <string>

#include "nlfront/errors.hpp"

namespace nlfront {

enum class KernelFamily { LogSublinear, StretchedExp, Algebraic, Laplace };

std::string to_string(KernelFamily family);

struct MassMoment {
    double mass;
    double first_moment;
};

/// Outcome of the tail classification: whether the kernel decays slower than
/// every exponential, and which of the two structural tail hypotheses
/// (monotone log-derivative ratio with an integrable power / ratio O(1/|x|))
/// it satisfies. Established analytically per family.
struct HypothesisReport {
    bool exponentially_unbounded = false;
    struct Hyp1 {
        bool holds = false;
        double sigma = 0.0;     ///< ratio |J'/J| nonincreasing on [sigma, inf)
        double epsilon0 = 0.0;  ///< exponent with integral of J^epsilon0 finite
    } hyp1;
    struct Hyp2 {
        bool holds = false;
        double ratio_bound = 0.0;  ///< C0 with |J'(x)/J(x)| <= C0/|x| for large x
    } hyp2;
};

struct TruncatedKernel;

/// A normalized dispersal kernel: even, continuous, strictly positive,
/// nonincreasing in |x|, with unit mass and finite first moment.
///
/// Each family is given by a closed tail formula valid beyond splice_radius;
/// inside the splice the kernel is held constant at the formula value (only
/// the log-sublinear family needs a positive splice, where the formula is
/// not monotone). The user-supplied multiplier C is rescaled so that the
/// total mass is exactly one; `normalization` records the rescaling factor.
class KernelSpec {
  public:
    /// J(x) = C exp(-alpha |x| / ln|x|) for large |x|; splice at e^2.
    static KernelSpec log_sublinear(double alpha, double C);
    /// J(x) = C exp(-beta |x|^alpha), alpha in (0,1).
    static KernelSpec stretched_exp(double alpha, double beta, double C);
    /// J(x) = C (1+|x|)^(-alpha), alpha > 2 (finite first moment).
    static KernelSpec algebraic(double alpha, double C);
    /// J(x) = C exp(-rate |x|); the exponentially bounded comparator.
    static KernelSpec laplace(double rate, double C);

    KernelFamily family() const { return family_; }
    double splice_radius() const { return splice_; }
    /// J(0) (the constant core value for spliced families).
    double core_value() const { return core_; }
    /// Multiplier applied to the user C so that the mass is one.
    double normalization() const { return amp_ / user_c_; }
    double amplitude() const { return amp_; }

    /// Point evaluation; total, even, nonincreasing in |x|.
    double evaluate(double x) const;
    double operator()(double x) const { return evaluate(x); }

    /// Recomputes mass and first moment from the family integrals.
    MassMoment mass_and_first_moment() const;

    /// Unique x >= 0 with J(x) = y, for y in (0, J(0)].
    /// Closed forms where available, otherwise bracketed bisection.
    double inverse_tail(double y) const;

    /// |J'(x)/J(x)| from the analytic tail formula; requires x > splice_radius.
    double log_derivative_ratio(double x) const;

    /// Analytic tail classification (see HypothesisReport).
    HypothesisReport classify() const;

    /// Truncate to the window carrying mass 1 - eps.
    TruncatedKernel truncate(double eps) const;

    /// Integral of J(z) e^(eta z) dz. Throws DivergenceError when infinite
    /// (any fat-tailed family with eta > 0, Laplace with eta >= rate).
    double exponential_moment(double eta) const;

    // --- tail helpers shared by the analysis and certificate modules ---

    /// Integral of J over [0, x], x >= 0.
    double cdf(double x) const;
    /// Integral of J over [x, inf). Exact for closed-form families; a sharp
    /// upper bound for the log-sublinear family.
    double tail_mass(double x) const;
    /// Upper bound for the integral of J^p over [x, inf), p in (0,1].
    /// Throws DivergenceError for algebraic tails with p*alpha <= 1.
    double tail_mass_pow(double p, double x) const;
    /// Half first moment: integral of z J(z) dz over [0, inf).
    double first_moment_half() const;

    /// Family parameters as supplied (alpha / rate, beta).
    double param_alpha() const { return a_; }
    double param_beta() const { return b_; }
    double param_c() const { return user_c_; }

  private:
    KernelSpec(KernelFamily family, double a, double b, double c);

    double shape(double s) const;        // tail formula at max(s, splice), C excluded
    double shape_mass() const;           // integral of shape over R
    double shape_first_moment() const;   // integral of |x| shape over R

    KernelFamily family_;
    double a_ = 0.0;       // alpha (or Laplace rate)
    double b_ = 0.0;       // beta (stretched-exponential only)
    double user_c_ = 1.0;
    double splice_ = 0.0;
    double amp_ = 1.0;     // normalization * user C
    double core_ = 0.0;    // J(0)
};

/// Restriction of a kernel to [-A_eps, A_eps], renormalized by
/// D_eps = integral of J over that window (= 1 - eps by construction).
struct TruncatedKernel {
    KernelSpec parent;
    double A_eps = 0.0;
    double D_eps = 1.0;

    double evaluate(double x) const;
    double operator()(double x) const { return evaluate(x); }

    /// Integral of J_eps(z) e^(eta z) dz; finite for every eta (compact support).
    double exponential_moment(double eta) const;
};

} // namespace nlfront
