#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nlfront/analysis.hpp"
#include "nlfront/grid.hpp"
#include "nlfront/kernels.hpp"
#include "nlfront/reaction.hpp"

namespace nlfront {

/// Space-time function with the analytic pieces the residual quadrature
/// needs: point values, an exact time derivative, kink locations in x, and
/// a uniform bound used to truncate the convolution tails.
struct SpaceTimeFn {
    std::function<double(double, double)> value;            // (t, x)
    std::function<double(double, double)> time_derivative;  // analytic
    std::function<std::vector<double>(double)> kinks;       // x locations at t
    double sup_bound = 1.0;
};

/// Convolution of the kernel with a frozen-in-time profile at a single
/// point, by adaptive quadrature split at the kernel and profile kinks and
/// truncated where the mass bound drops below a tenth of the tolerance.
double convolve_at(const KernelSpec& kernel, const std::function<double(double)>& profile,
                   const std::vector<double>& profile_kinks, double sup_bound, double x,
                   double abs_tol);

/// N[w](t,x) = w_t - (J*w - w) - f(w). A null reaction drops the f term
/// (residual against the linear flow).
double residual(const SpaceTimeFn& w, const KernelSpec& kernel, const ReactionSpec* reaction,
                double t, double x, double quad_tol = 1e-9);

struct CertificateSample {
    double t = 0.0, x = 0.0, residual = 0.0;
    std::string region;
};

/// Sign-certificate record: a subsolution passes when every sampled
/// residual is <= tol, a supersolution when every residual is >= -tol.
struct CertificateReport {
    std::string construction;
    bool is_subsolution = true;
    double quad_tol = 1e-9;
    double tol = 1e-8;
    std::vector<CertificateSample> samples;
    bool verdict = false;
    CertificateSample worst{};
    std::map<std::string, double> constants;

    void finalize();
};

struct SampleGrid {
    std::vector<double> times;  // linear
    std::vector<double> xs;     // log-spaced, positive
};
SampleGrid make_sample_grid(double t0, double t1, int nt, double x0, double x1, int nx);

// ---- Step 1: v(t,x) = (u0(x) + t (J*u0)(x)) e^{-t} ------------------------

/// J*u0 evaluated pointwise by quadrature, memoized on exact arguments
/// (adaptive rules revisit shared abscissae).
class ConvolvedProfile {
  public:
    ConvolvedProfile(const KernelSpec& kernel, const InitialCondition& u0,
                     double abs_tol = 1e-11);
    double operator()(double x) const;

  private:
    KernelSpec kernel_;
    InitialCondition u0_;
    double tol_;
    mutable std::unordered_map<double, double> memo_;
};

struct LinearSubsolution {
    KernelSpec kernel;
    InitialCondition u0;
    std::shared_ptr<ConvolvedProfile> ju0;

    double value(double t, double x) const;
    double time_derivative(double t, double x) const;
    SpaceTimeFn as_fn() const;
};

LinearSubsolution build_linear_subsolution(const KernelSpec& kernel, const InitialCondition& u0);

/// C with v(1, x) >= C J(x): probe-grid minimum of the ratio, kept strictly
/// inside (0, 1) with a 5% safety factor.
double extract_lower_bound_constant(const LinearSubsolution& sub);

/// Residuals of v against the linear problem at the sample grid
/// (subsolution: every residual <= tol); also extracts and records C.
CertificateReport check_linear_subsolution(const KernelSpec& kernel, const InitialCondition& u0,
                                           const SampleGrid& grid, double quad_tol = 1e-9);

// ---- Step 2: plateau + g(C J(x) e^{rho1 t}) subsolution --------------------

struct Step2Subsolution {
    KernelSpec kernel;
    ReactionSpec reaction;
    double epsilon = 0.0;
    double rho1 = 0.0;       // f'(0) - eps/2
    double eps_prime = 0.0;  // eps' int_0^inf z J(z) dz = eps/2
    double xi1 = 0.0;        // |J'| <= (eps'/2) J beyond xi1
    double C = 0.0;
    double kappa = 0.0;      // C J(xi1)
    double s1 = 0.0, B = 0.0, s2 = 0.0, lambda2 = 0.0;
    double M = 0.0, delta = 0.0, s0 = 0.0;  // envelope constants used

    double g(double s) const { return s - B * std::pow(s, 1.0 + delta); }
    double xi0(double t) const;  // plateau edge: C J(xi0) e^{rho1 t} = s2
    double value(double t, double x) const;
    double time_derivative(double t, double x) const;
    SpaceTimeFn as_fn() const;
};

Step2Subsolution build_step2_subsolution(const KernelSpec& kernel, const ReactionSpec& reaction,
                                         double epsilon,
                                         const InitialCondition& u0 = InitialCondition::bump(10.0));

CertificateReport check_step2_subsolution(const Step2Subsolution& sub, const SampleGrid& grid,
                                          double quad_tol = 1e-9);

// ---- supersolutions of the two tail hypotheses -----------------------------

struct Hyp1Supersolution {
    ConcaveTailProfile profile;
    ReactionSpec reaction;
    double sigma1 = 0.0;
    double rho0 = 0.0;
    double phi_integral = 0.0;  // int J e^phi

    double value(double t, double x) const;  // min(phi_hat(x)/phi_hat(sigma1) e^{rho0 t}, 1)
    double time_derivative(double t, double x) const;
    double crossing(double t) const;  // |x| where the cap at 1 is reached
    SpaceTimeFn as_fn() const;
};

Hyp1Supersolution build_hyp1_supersolution(const KernelSpec& kernel, const ReactionSpec& reaction,
                                           std::optional<double> epsilon0 = std::nullopt,
                                           double sigma1 = 10.0);

/// Residuals >= -tol at all samples, plus the profile inequality
/// (J*phi_hat)(x) <= phi_hat(x) * int J/phi_hat at the sampled x.
CertificateReport check_hyp1_supersolution(const Hyp1Supersolution& sup, const SampleGrid& grid,
                                           double quad_tol = 1e-9);

struct Hyp2Supersolution {
    KernelSpec kernel;
    ReactionSpec reaction;
    double K = 0.0;      // sup (J*J)/J - 1
    double rho0 = 0.0;   // r + K
    double sigma1 = 0.0;

    double value(double t, double x) const;  // min(J(x)/J(sigma1) e^{rho0 t}, 1)
    double time_derivative(double t, double x) const;
    double crossing(double t) const;
    SpaceTimeFn as_fn() const;
};

Hyp2Supersolution build_hyp2_supersolution(const KernelSpec& kernel, const ReactionSpec& reaction,
                                           double sigma1 = 10.0);

/// Residuals >= -tol at all samples, plus (J*J)(x)/J(x) <= 1 + K at the
/// sampled x (within quadrature tolerance).
CertificateReport check_hyp2_supersolution(const Hyp2Supersolution& sup, const SampleGrid& grid,
                                           double quad_tol = 1e-9);

} // namespace nlfront
