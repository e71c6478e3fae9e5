#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nlfront/errors.hpp"

namespace nlfront {

/// Uniform symmetric grid on [-L, L] with n (even) points, dx = 2L/(n-1).
struct Grid1D {
    double half_width = 0.0;
    int n = 0;
    double dx = 0.0;

    Grid1D() = default;
    Grid1D(double L, int points);

    double x(int i) const { return -half_width + i * dx; }
    std::vector<double> coordinates() const;

    bool operator==(const Grid1D& other) const {
        return n == other.n && half_width == other.half_width;
    }
};

/// A sampled field u(t, .) on a grid.
struct Field {
    Grid1D grid;
    std::vector<double> values;
    double time = 0.0;

    Field() = default;
    Field(const Grid1D& g, double t = 0.0) : grid(g), values(g.n, 0.0), time(t) {}

    double mass() const;  // sum of u_i dx
    /// Linear interpolation at x (clamped to the domain).
    double value_at(double x) const;
};

enum class InitialShape { Bump, Indicator, Custom };

/// Initial condition with an analytic point evaluation (the certificate
/// module convolves it by quadrature, so it must exist off the grid too).
struct InitialCondition {
    InitialShape shape = InitialShape::Bump;
    double radius = 10.0;
    std::vector<double> xs, us;  // Custom only (piecewise linear)

    static InitialCondition bump(double radius);
    static InitialCondition indicator(double radius);
    static InitialCondition custom(std::vector<double> xs, std::vector<double> us);

    double evaluate(double x) const;
    double support_radius() const;
};

/// Samples the initial condition on the grid. The support must fit strictly
/// inside the domain.
Field sample_initial_condition(const Grid1D& grid, const InitialCondition& ic);

/// Max of |u| over the outer bands [-L, -L+buffer] and [L-buffer, L].
double boundary_egress(const Field& field, double buffer);

/// Snapshot serialization: header "x,u", 17 significant digits, LF endings.
void write_field_csv(const Field& field, const std::filesystem::path& path);

} // namespace nlfront
