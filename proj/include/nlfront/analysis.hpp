#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nlfront/grid.hpp"
#include "nlfront/kernels.hpp"
#include "nlfront/reaction.hpp"

namespace nlfront {

struct Crossing {
    std::optional<double> x_right;
    std::optional<double> x_left;
};

/// Outermost lambda-crossings of a sampled profile: scan inward from each
/// boundary; the first bracket u(x_i) < lambda <= u(x_{i-1}) is resolved by
/// linear interpolation. Absence is a value, not an error.
Crossing extract_level_set(std::span<const double> xs, std::span<const double> u, double lambda);
Crossing extract_level_set(const Field& field, double lambda);

struct LevelSetSample {
    double t = 0.0;
    std::optional<double> x_right;
    std::optional<double> x_left;
};

struct LevelSetTrace {
    double lambda = 0.0;
    std::vector<LevelSetSample> samples;
};

LevelSetTrace trace_level_set(const std::vector<Field>& snapshots, double lambda);

/// Level-set envelopes of the two containment theorems:
/// lower(t) = J^{-1}(e^{-(f'(0)-eps) t}), upper(t) = J^{-1}(e^{-rho t}).
struct EnvelopeReport {
    double lambda = 0.0;
    double epsilon = 0.0;
    double rho = 0.0;
    std::vector<double> times;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::optional<double>> x_right;     // from the trace, when given
    std::vector<std::optional<bool>> contained;
};

EnvelopeReport envelopes(const KernelSpec& kernel, const ReactionSpec& reaction,
                         double lambda, double epsilon, double rho,
                         std::span<const double> times,
                         const LevelSetTrace* trace = nullptr);

/// (J*J)(x) by adaptive quadrature with analytic tail truncation.
double self_convolution(const KernelSpec& kernel, double x, double abs_tol = 1e-10);

/// Numerical sup over a log-spaced grid of (J*J)(x)/J(x) - 1, floored at 1
/// (the large-x limit of the ratio for regularly varying tails is 2).
double self_convolution_ratio_bound(const KernelSpec& kernel);

/// Concave nondecreasing profile phi with phi(0) = 0 that matches
/// (eps0 - 1) ln J(x + tau) beyond sigma - tau and is linear below; the
/// weight e^{-phi(|x|)} drives the supersolution for kernels with a
/// monotone log-derivative ratio.
struct ConcaveTailProfile {
    KernelSpec kernel;
    double epsilon0 = 0.5;
    double sigma = 0.0;
    double tau = 0.0;
    double junction = 0.0;      // sigma - tau
    double linear_slope = 0.0;  // phi on [0, junction]

    double phi(double x) const;       // x >= 0
    double phi_hat(double x) const;   // e^{-phi(|x|)}, even
    /// Integral of J(y) e^{phi(|y|)} dy over the line.
    double weighted_integral(double rel_tol = 1e-9) const;
};

ConcaveTailProfile build_concave_tail_profile(const KernelSpec& kernel,
                                              std::optional<double> epsilon0 = std::nullopt);

struct TheoreticalRho {
    double rho = 0.0;    // rho0 * (1 + margin)
    double rho0 = 0.0;
    bool used_hyp2 = false;
    double K = 0.0;             // hyp2 path
    double phi_integral = 0.0;  // hyp1 path
    double epsilon0 = 0.0, sigma = 0.0, tau = 0.0;
};

/// Envelope rate from the supersolution constants: rho0 = r + K under the
/// ratio-O(1/|x|) hypothesis, rho0 = max(int J e^phi, 1) - 1 + r under the
/// monotone-ratio hypothesis. Throws HypothesisError when neither applies.
TheoreticalRho theoretical_rho(const KernelSpec& kernel, const ReactionSpec& reaction,
                               double margin = 0.05);

struct SpeedEstimate {
    double t0 = 0.0, t1 = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

/// Least-squares x_right(t) fit over [t0, t1]; needs >= 5 samples.
SpeedEstimate empirical_speed(const LevelSetTrace& trace, double t0, double t1);

/// Slopes over `count` consecutive equal windows of [t0, t1].
std::vector<SpeedEstimate> windowed_speeds(const LevelSetTrace& trace, double t0, double t1,
                                           int count);

struct MinimalSpeed {
    double c_star = 0.0;
    double eta_star = 0.0;
};

/// Minimize (D int J e^{eta z} dz - 1 + f'(0)) / eta over eta > 0.
MinimalSpeed minimal_speed(const TruncatedKernel& kernel, const ReactionSpec& reaction);
/// Same for an exponentially bounded kernel (D = 1). Throws DivergenceError
/// for fat-tailed kernels: every level set spreads infinitely fast.
MinimalSpeed minimal_speed(const KernelSpec& kernel, const ReactionSpec& reaction);

/// w(t) = x_right(lo)(t) - x_right(hi)(t) for level values lo < hi.
std::vector<double> flatness_width(const LevelSetTrace& trace_hi, const LevelSetTrace& trace_lo,
                                   std::span<const double> times);

/// Domain half-width from the upper envelope at t_max plus 25% margin,
/// floored at four times the initial support radius.
double recommend_domain(const KernelSpec& kernel, const ReactionSpec& reaction, double t_max,
                        double u0_support, double lambda_min = 0.05,
                        std::optional<double> rho = std::nullopt);

} // namespace nlfront
