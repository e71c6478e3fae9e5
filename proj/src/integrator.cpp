#include "nlfront/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlfront {

double stable_dt(const ReactionSpec& reaction, double safety) {
    if (!(safety > 0.0 && safety <= 1.0))
        throw std::invalid_argument("safety factor must lie in (0,1]");
    return safety * 2.0 / (1.0 + reaction.max_abs_fprime());
}

TimeStepper::TimeStepper(const ConvolutionPlan& plan, const ReactionSpec* reaction,
                         double range_tol)
    : plan_(plan), reaction_(reaction), range_tol_(range_tol) {
    const std::size_t n = static_cast<std::size_t>(plan.grid().n);
    k1_.resize(n); k2_.resize(n); k3_.resize(n); k4_.resize(n); tmp_.resize(n);
}

void TimeStepper::rhs(const std::vector<double>& u, std::vector<double>& out) {
    plan_.nonlocal_into(u, out);
    if (reaction_) {
        for (std::size_t i = 0; i < u.size(); ++i) out[i] += reaction_->f(u[i]);
    }
}

void TimeStepper::check_range(const Field& state) const {
    for (std::size_t i = 0; i < state.values.size(); ++i) {
        const double v = state.values[i];
        if (!std::isfinite(v))
            throw RangeViolationError("non-finite value at t=" + std::to_string(state.time),
                                      state.time);
        if (v < -range_tol_ || v > 1.0 + range_tol_)
            throw RangeViolationError(
                "value " + std::to_string(v) + " outside [0,1] tolerance band at t=" +
                    std::to_string(state.time) + " (instability or undersized domain)",
                state.time);
    }
}

void TimeStepper::step(Field& state, double dt, Scheme scheme) {
    auto& u = state.values;
    const std::size_t n = u.size();
    if (scheme == Scheme::Euler) {
        rhs(u, k1_);
        for (std::size_t i = 0; i < n; ++i) u[i] += dt * k1_[i];
    } else {
        rhs(u, k1_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + 0.5 * dt * k1_[i];
        rhs(tmp_, k2_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + 0.5 * dt * k2_[i];
        rhs(tmp_, k3_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + dt * k3_[i];
        rhs(tmp_, k4_);
        const double w = dt / 6.0;
        for (std::size_t i = 0; i < n; ++i)
            u[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
    state.time += dt;
    check_range(state);
}

SimulationRun run_simulation(const KernelSpec& kernel, const ReactionSpec& reaction,
                             const Grid1D& grid, const InitialCondition& initial,
                             const StepperConfig& config, double deficit_max) {
    StepperConfig cfg = config;
    if (!(cfg.dt > 0.0)) cfg.dt = stable_dt(reaction, cfg.safety);
    std::sort(cfg.snapshot_times.begin(), cfg.snapshot_times.end());

    ConvolutionPlan plan(grid, kernel, deficit_max);
    TimeStepper stepper(plan, &reaction, cfg.range_tol);

    SimulationRun result;
    result.grid = grid;
    result.stepper = cfg;
    result.deficit = plan.deficit();

    Field state = sample_initial_condition(grid, initial);
    const double buffer = cfg.egress_buffer_fraction * grid.half_width;

    auto record_diag = [&](const Field& f) {
        const auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
        result.diagnostics.push_back({f.time, *lo, *hi, f.mass(), boundary_egress(f, buffer)});
    };

    std::size_t next_snap = 0;
    auto take_due_snapshots = [&](const Field& f) {
        while (next_snap < cfg.snapshot_times.size() &&
               cfg.snapshot_times[next_snap] <= f.time + 0.5 * cfg.dt + 1e-12) {
            result.snapshots.push_back(f);
            ++next_snap;
        }
    };

    record_diag(state);
    take_due_snapshots(state);

    // land exactly on t_max: full steps of dt plus one short closing step
    const long steps = std::lround(std::ceil(cfg.t_max / cfg.dt - 1e-9));
    for (long s = 0; s < steps; ++s) {
        const double dt = (s == steps - 1) ? cfg.t_max - state.time : cfg.dt;
        stepper.step(state, dt, cfg.scheme);
        record_diag(state);
        take_due_snapshots(state);
        if (result.diagnostics.back().egress > cfg.egress_threshold) {
            result.aborted_on_egress = true;
            break;
        }
    }
    result.final_time = state.time;
    return result;
}

} // namespace nlfront
