#pragma once

#include <optional>
#include <vector>

#include "nlfront/convolution.hpp"
#include "nlfront/grid.hpp"
#include "nlfront/reaction.hpp"

namespace nlfront {

enum class Scheme { Euler, RK4 };

struct StepperConfig {
    Scheme scheme = Scheme::RK4;
    double dt = 0.0;
    double safety = 0.25;
    double t_max = 0.0;
    std::vector<double> snapshot_times;  // sorted
    double range_tol = 1e-8;
    double egress_buffer_fraction = 0.1;
    double egress_threshold = 1e-6;
};

/// Explicit stability bound: safety * 2 / (1 + max|f'|).
double stable_dt(const ReactionSpec& reaction, double safety);

/// One explicit step of du/dt = (J*u - u) + f(u). `reaction == nullptr`
/// integrates the linear flow (f == 0). Throws RangeViolationError when the
/// state leaves [-range_tol, 1 + range_tol] or turns non-finite.
class TimeStepper {
  public:
    TimeStepper(const ConvolutionPlan& plan, const ReactionSpec* reaction,
                double range_tol = 1e-8);

    void step(Field& state, double dt, Scheme scheme);

  private:
    void rhs(const std::vector<double>& u, std::vector<double>& out);
    void check_range(const Field& state) const;

    const ConvolutionPlan& plan_;
    const ReactionSpec* reaction_;
    double range_tol_;
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

struct StepDiagnostics {
    double t, min_u, max_u, mass, egress;
};

struct SimulationRun {
    Grid1D grid;
    StepperConfig stepper;
    std::vector<Field> snapshots;
    std::vector<StepDiagnostics> diagnostics;
    double deficit = 0.0;
    bool aborted_on_egress = false;
    double final_time = 0.0;
};

/// Method-of-lines driver: snapshots at the step nearest each requested
/// time, per-step diagnostics, clean abort (with partial results flagged)
/// when the egress guard trips.
SimulationRun run_simulation(const KernelSpec& kernel, const ReactionSpec& reaction,
                             const Grid1D& grid, const InitialCondition& initial,
                             const StepperConfig& config, double deficit_max = 1e-3);

} // namespace nlfront
