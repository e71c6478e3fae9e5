#include "nlfront/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlfront/quadrature.hpp"

namespace nlfront {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

Crossing extract_level_set(std::span<const double> xs, std::span<const double> u, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::domain_error("level value must lie in (0,1)");
    const std::size_t n = u.size();
    Crossing crossing;
    for (std::size_t i = n - 1; i > 0; --i) {
        if (u[i] < lambda && lambda <= u[i - 1]) {
            const double w = (u[i - 1] - lambda) / (u[i - 1] - u[i]);
            crossing.x_right = xs[i - 1] + w * (xs[i] - xs[i - 1]);
            break;
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (u[i] < lambda && lambda <= u[i + 1]) {
            const double w = (u[i + 1] - lambda) / (u[i + 1] - u[i]);
            crossing.x_left = xs[i + 1] + w * (xs[i] - xs[i + 1]);
            break;
        }
    }
    return crossing;
}

Crossing extract_level_set(const Field& field, double lambda) {
    const auto xs = field.grid.coordinates();
    return extract_level_set(xs, field.values, lambda);
}

LevelSetTrace trace_level_set(const std::vector<Field>& snapshots, double lambda) {
    LevelSetTrace trace;
    trace.lambda = lambda;
    trace.samples.reserve(snapshots.size());
    for (const auto& snap : snapshots) {
        const auto crossing = extract_level_set(snap, lambda);
        trace.samples.push_back({snap.time, crossing.x_right, crossing.x_left});
    }
    return trace;
}

EnvelopeReport envelopes(const KernelSpec& kernel, const ReactionSpec& reaction,
                         double lambda, double epsilon, double rho,
                         std::span<const double> times, const LevelSetTrace* trace) {
    const double f0 = reaction.fprime0();
    if (!(epsilon > 0.0 && epsilon < f0))
        throw std::invalid_argument("envelopes: need 0 < epsilon < f'(0)");
    if (!(rho > f0))
        throw std::invalid_argument("envelopes: need rho > f'(0)");
    EnvelopeReport report;
    report.lambda = lambda;
    report.epsilon = epsilon;
    report.rho = rho;
    const double j0 = kernel.core_value();
    for (double t : times) {
        report.times.push_back(t);
        const double y_lo = std::exp(-(f0 - epsilon) * t);
        const double y_hi = std::exp(-rho * t);
        report.lower.push_back(y_lo <= j0 ? kernel.inverse_tail(y_lo) : 0.0);
        report.upper.push_back(y_hi <= j0 ? kernel.inverse_tail(y_hi) : 0.0);

        std::optional<double> xr;
        if (trace) {
            for (const auto& s : trace->samples) {
                if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, std::abs(t)) + 1e-12) {
                    xr = s.x_right;
                    break;
                }
            }
        }
        report.x_right.push_back(xr);
        if (xr)
            report.contained.push_back(report.lower.back() <= *xr && *xr <= report.upper.back());
        else
            report.contained.push_back(std::nullopt);
    }
    return report;
}

double self_convolution(const KernelSpec& kernel, double x, double abs_tol) {
    x = std::abs(x);
    // truncation point: both one-sided remainders below abs_tol/10
    double Y = std::max(2.0 * x + 16.0, 64.0);
    const auto remainder = [&](double y) {
        return kernel.evaluate(y - x) * kernel.tail_mass(y) +
               kernel.evaluate(y + x) * kernel.tail_mass(y);
    };
    while (remainder(Y) > 0.1 * abs_tol && Y < 1e18) Y *= 2.0;

    const auto f = [&](double y) { return kernel.evaluate(x - y) * kernel.evaluate(y); };
    std::vector<double> splits{0.0, x};
    const double splice = kernel.splice_radius();
    if (splice > 0.0) {
        for (double s : {splice, -splice, x - splice, x + splice}) splits.push_back(s);
    }
    return quad::adaptive_segments(f, -Y, Y, splits, 0.8 * abs_tol);
}

double self_convolution_ratio_bound(const KernelSpec& kernel) {
    double worst = 1.0;  // large-x limit of (J*J)/J - 1
    std::vector<double> grid{0.0};
    for (int i = 0; i <= 160; ++i) grid.push_back(std::pow(10.0, -2.0 + 8.0 * i / 160.0));
    for (double x : grid) {
        const double jx = kernel.evaluate(x);
        const double ratio = self_convolution(kernel, x, std::max(1e-14, 1e-8 * jx)) / jx - 1.0;
        worst = std::max(worst, ratio);
    }
    return worst;
}

double ConcaveTailProfile::phi(double x) const {
    if (x <= junction) return linear_slope * x;
    return (epsilon0 - 1.0) * std::log(kernel.evaluate(x + tau));
}

double ConcaveTailProfile::phi_hat(double x) const { return std::exp(-phi(std::abs(x))); }

double ConcaveTailProfile::weighted_integral(double rel_tol) const {
    // integrand on [0, inf): J(y) e^{phi(y)}; beyond the junction it equals
    // J(y)^{eps0} (J(y+tau)/J(y))^{eps0-1}
    const auto f = [this](double y) { return kernel.evaluate(y) * std::exp(phi(y)); };

    // tail cut: (J(y)/J(y+tau))^{1-eps0} <= exp((1-eps0) tau ratio(Y)) for y >= Y
    const double mono_from = std::max({sigma, kernel.splice_radius() * 1.000001, junction});
    double Y = std::max(2.0 * mono_from, 64.0);
    const auto tail_bound = [&](double y) {
        const double boost = std::exp((1.0 - epsilon0) * tau * kernel.log_derivative_ratio(y));
        return boost * kernel.tail_mass_pow(epsilon0, y);
    };
    while (tail_bound(Y) > 1e-13 && Y < 1e18) Y *= 2.0;

    std::vector<double> splits{junction};
    const double splice = kernel.splice_radius();
    if (splice > 0.0) {
        splits.push_back(splice);
        if (splice - tau > 0.0) splits.push_back(splice - tau);
    }
    const double rough = quad::adaptive_segments(f, 0.0, Y, splits, 1e-8);
    const double refined =
        quad::adaptive_segments(f, 0.0, Y, splits, std::max(1e-14, rel_tol * std::abs(rough)));
    return 2.0 * (refined + tail_bound(Y));
}

ConcaveTailProfile build_concave_tail_profile(const KernelSpec& kernel,
                                              std::optional<double> epsilon0) {
    const auto report = kernel.classify();
    if (!report.hyp1.holds)
        throw HypothesisError("kernel does not satisfy the monotone-ratio hypothesis");
    ConcaveTailProfile profile{kernel};
    profile.epsilon0 = epsilon0.value_or(report.hyp1.epsilon0);
    if (!(profile.epsilon0 > 0.0 && profile.epsilon0 < 1.0))
        throw std::invalid_argument("epsilon0 must lie in (0,1)");
    if (kernel.family() == KernelFamily::Algebraic &&
        profile.epsilon0 * kernel.param_alpha() <= 1.0)
        throw std::invalid_argument("epsilon0 too small: J^eps0 not integrable");

    // formula region start: ratio monotone, J differentiable, and J < 1 there
    double sigma = std::max({report.hyp1.sigma, kernel.splice_radius(), 1.0});
    if (kernel.evaluate(sigma) >= 0.999)
        sigma = kernel.inverse_tail(0.999 * std::min(1.0, kernel.core_value()));
    profile.sigma = sigma;

    const double v = (profile.epsilon0 - 1.0) * std::log(kernel.evaluate(sigma));
    const double slope_at_sigma =
        (1.0 - profile.epsilon0) * kernel.log_derivative_ratio(sigma * (1.0 + 1e-12));
    // smallest shift keeping the ramp slope >= the formula slope (concavity)
    profile.tau = std::max(0.0, sigma - v / slope_at_sigma);
    profile.junction = sigma - profile.tau;
    profile.linear_slope = v / profile.junction;
    return profile;
}

TheoreticalRho theoretical_rho(const KernelSpec& kernel, const ReactionSpec& reaction,
                               double margin) {
    const auto report = kernel.classify();
    if (!report.exponentially_unbounded || !(report.hyp1.holds || report.hyp2.holds))
        throw HypothesisError("theoretical_rho requires an exponentially unbounded kernel "
                              "satisfying one of the tail hypotheses");
    TheoreticalRho out;
    const double r = reaction.sup_per_capita_rate();
    if (report.hyp2.holds) {
        out.used_hyp2 = true;
        out.K = self_convolution_ratio_bound(kernel);
        out.rho0 = r + out.K;
    } else {
        const auto profile = build_concave_tail_profile(kernel);
        out.phi_integral = profile.weighted_integral();
        out.epsilon0 = profile.epsilon0;
        out.sigma = profile.sigma;
        out.tau = profile.tau;
        out.rho0 = std::max(out.phi_integral, 1.0) - 1.0 + r;
    }
    out.rho = out.rho0 * (1.0 + margin);
    return out;
}

SpeedEstimate empirical_speed(const LevelSetTrace& trace, double t0, double t1) {
    std::vector<double> ts, xs;
    for (const auto& s : trace.samples) {
        if (s.t >= t0 - 1e-12 && s.t <= t1 + 1e-12 && s.x_right) {
            ts.push_back(s.t);
            xs.push_back(*s.x_right);
        }
    }
    if (ts.size() < 5)
        throw InsufficientSamplesError("empirical_speed needs >= 5 samples in the window");
    const auto fit = quad::fit_line(ts, xs);
    return {t0, t1, fit.slope, fit.intercept, fit.rms};
}

std::vector<SpeedEstimate> windowed_speeds(const LevelSetTrace& trace, double t0, double t1,
                                           int count) {
    std::vector<SpeedEstimate> out;
    const double w = (t1 - t0) / count;
    for (int k = 0; k < count; ++k)
        out.push_back(empirical_speed(trace, t0 + k * w, t0 + (k + 1) * w));
    return out;
}

namespace {

MinimalSpeed minimize_speed(const std::function<double(double)>& moment, double D, double f0) {
    if (!(f0 > 0.0))
        throw std::domain_error("minimal_speed requires f'(0) > 0");
    if (!(D - 1.0 + f0 > 0.0))
        throw ConstructionError("minimal_speed: truncation too aggressive, D - 1 + f'(0) <= 0");
    const auto h = [&](double eta) -> double {
        if (!(eta > 0.0)) return kInf;
        try {
            const double m = moment(eta);
            const double v = (D * m - 1.0 + f0) / eta;
            return std::isfinite(v) ? v : kInf;
        } catch (const DivergenceError&) {
            return kInf;
        }
    };

    // geometric sweep to bracket the minimum (h -> inf at both ends)
    std::vector<double> etas, vals;
    for (double eta = 1e-6; eta <= 1e9; eta *= 2.0) {
        etas.push_back(eta);
        vals.push_back(h(eta));
        const std::size_t k = vals.size();
        if (k >= 3 && std::isfinite(vals[k - 3]) && vals[k - 2] > vals[k - 3] &&
            (vals[k - 1] > vals[k - 2] || !std::isfinite(vals[k - 1])))
            break;
        if (k >= 2 && !std::isfinite(vals[k - 1]) && std::isfinite(vals[k - 2])) break;
    }
    const std::size_t best =
        std::min_element(vals.begin(), vals.end()) - vals.begin();
    if (!std::isfinite(vals[best]))
        throw DivergenceError("minimal_speed: no finite exponential moment found");
    double a = best > 0 ? etas[best - 1] : etas[best] / 2.0;
    double b = best + 1 < etas.size() ? etas[best + 1] : etas[best] * 2.0;

    // golden section
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = h(x1), f2 = h(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-8 * (std::abs(a) + std::abs(b)); ++it) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = h(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = h(x2);
        }
    }
    const double eta_star = 0.5 * (a + b);
    MinimalSpeed speed{h(eta_star), eta_star};

    // unimodality spot check on the bracket
    double prev = kInf;
    bool falling = true;
    for (int i = 1; i <= 9; ++i) {
        const double v = h(a / 2.0 + (2.0 * b - a / 2.0) * i / 10.0);
        if (falling && v > prev * (1.0 + 1e-12)) falling = false;
        else if (!falling && v < prev * (1.0 - 1e-9) && std::isfinite(prev))
            throw std::logic_error("minimal_speed: dispersion profile not unimodal on bracket");
        prev = v;
    }
    return speed;
}

} // namespace

MinimalSpeed minimal_speed(const TruncatedKernel& kernel, const ReactionSpec& reaction) {
    const auto moment = [&kernel](double eta) { return kernel.exponential_moment(eta); };
    return minimize_speed(moment, kernel.D_eps, reaction.fprime0());
}

MinimalSpeed minimal_speed(const KernelSpec& kernel, const ReactionSpec& reaction) {
    if (kernel.classify().exponentially_unbounded)
        throw DivergenceError("minimal_speed: exponentially unbounded kernel, "
                              "infinite speed expected");
    const auto moment = [&kernel](double eta) { return kernel.exponential_moment(eta); };
    return minimize_speed(moment, 1.0, reaction.fprime0());
}

std::vector<double> flatness_width(const LevelSetTrace& trace_hi, const LevelSetTrace& trace_lo,
                                   std::span<const double> times) {
    if (!(trace_lo.lambda < trace_hi.lambda))
        throw std::invalid_argument("flatness_width expects lambda_lo < lambda_hi");
    const auto lookup = [](const LevelSetTrace& trace, double t) -> double {
        for (const auto& s : trace.samples) {
            if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, std::abs(t)) + 1e-12) {
                if (!s.x_right)
                    throw std::runtime_error("flatness_width: level crossing absent at t=" +
                                             std::to_string(t));
                return *s.x_right;
            }
        }
        throw std::runtime_error("flatness_width: no trace sample at t=" + std::to_string(t));
    };
    std::vector<double> widths;
    for (double t : times) widths.push_back(lookup(trace_lo, t) - lookup(trace_hi, t));
    return widths;
}

double recommend_domain(const KernelSpec& kernel, const ReactionSpec& reaction, double t_max,
                        double u0_support, double lambda_min, std::optional<double> rho) {
    if (!(lambda_min > 0.0 && lambda_min < 1.0))
        throw std::invalid_argument("lambda_min must lie in (0,1)");
    const double r = rho ? *rho : theoretical_rho(kernel, reaction).rho;
    const double y = std::exp(-r * t_max);
    const double reach = y <= kernel.core_value() ? kernel.inverse_tail(y) : 0.0;
    return std::max(1.25 * reach, 4.0 * u0_support);
}

} // namespace nlfront
