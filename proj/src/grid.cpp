#include "nlfront/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace nlfront {

Grid1D::Grid1D(double L, int points) : half_width(L), n(points) {
    if (!(L > 0.0)) throw std::invalid_argument("grid half width must be positive");
    if (n < 16 || n % 2 != 0) throw std::invalid_argument("grid needs an even n >= 16");
    dx = 2.0 * L / (n - 1);
}

std::vector<double> Grid1D::coordinates() const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = x(i);
    return xs;
}

double Field::mass() const {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc * grid.dx;
}

double Field::value_at(double x) const {
    if (x <= grid.x(0)) return values.front();
    if (x >= grid.x(grid.n - 1)) return values.back();
    const double s = (x - grid.x(0)) / grid.dx;
    const int i = std::min(static_cast<int>(s), grid.n - 2);
    const double w = s - i;
    return (1.0 - w) * values[i] + w * values[i + 1];
}

InitialCondition InitialCondition::bump(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
    InitialCondition ic;
    ic.shape = InitialShape::Bump;
    ic.radius = radius;
    return ic;
}

InitialCondition InitialCondition::indicator(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("indicator radius must be positive");
    InitialCondition ic;
    ic.shape = InitialShape::Indicator;
    ic.radius = radius;
    return ic;
}

InitialCondition InitialCondition::custom(std::vector<double> xs, std::vector<double> us) {
    if (xs.size() != us.size() || xs.size() < 2)
        throw std::invalid_argument("custom profile needs matching xs/us with >= 2 points");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw std::invalid_argument("custom profile xs must be sorted");
    for (double u : us)
        if (u < 0.0 || u > 1.0) throw std::invalid_argument("custom profile values must lie in [0,1]");
    InitialCondition ic;
    ic.shape = InitialShape::Custom;
    ic.xs = std::move(xs);
    ic.us = std::move(us);
    ic.radius = std::max(std::abs(ic.xs.front()), std::abs(ic.xs.back()));
    return ic;
}

double InitialCondition::evaluate(double x) const {
    switch (shape) {
        case InitialShape::Bump: {
            const double r = x / radius;
            return std::max(1.0 - r * r, 0.0);
        }
        case InitialShape::Indicator:
            return std::abs(x) <= radius ? 1.0 : 0.0;
        case InitialShape::Custom: {
            if (x <= xs.front() || x >= xs.back()) {
                // outside the tabulated range the profile is zero
                if (x == xs.front()) return us.front();
                if (x == xs.back()) return us.back();
                return 0.0;
            }
            const auto it = std::upper_bound(xs.begin(), xs.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
            const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
            return (1.0 - w) * us[i] + w * us[i + 1];
        }
    }
    return 0.0;
}

double InitialCondition::support_radius() const { return radius; }

Field sample_initial_condition(const Grid1D& grid, const InitialCondition& ic) {
    if (!(ic.support_radius() < grid.half_width))
        throw std::invalid_argument("initial condition support exceeds the domain");
    Field field(grid, 0.0);
    bool nonzero = false;
    for (int i = 0; i < grid.n; ++i) {
        field.values[i] = ic.evaluate(grid.x(i));
        nonzero = nonzero || field.values[i] > 0.0;
    }
    if (!nonzero) throw std::invalid_argument("initial condition is identically zero on the grid");
    return field;
}

double boundary_egress(const Field& field, double buffer) {
    if (!(buffer < field.grid.half_width))
        throw std::invalid_argument("egress buffer must be smaller than the half width");
    const double edge = field.grid.half_width - buffer;
    double worst = 0.0;
    for (int i = 0; i < field.grid.n; ++i) {
        if (std::abs(field.grid.x(i)) >= edge)
            worst = std::max(worst, std::abs(field.values[i]));
    }
    return worst;
}

void write_field_csv(const Field& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "x,u\n";
    char buf[96];
    for (int i = 0; i < field.grid.n; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", field.grid.x(i), field.values[i]);
        out << buf;
    }
}

} // namespace nlfront
