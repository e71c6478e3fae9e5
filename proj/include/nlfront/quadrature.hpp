#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "nlfront/errors.hpp"

namespace nlfront::quad {

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson on [a,b] to an absolute tolerance.
template <class F>
double adaptive(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

/// Adaptive Simpson with interior break points (kinks of the integrand).
/// Points outside (a,b) are ignored; the tolerance is split evenly.
template <class F>
double adaptive_segments(const F& f, double a, double b,
                         std::vector<double> splits, double abs_tol,
                         int max_depth = 48) {
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    std::vector<double> pts;
    for (double s : splits) {
        if (s < a || s > b) continue;
        if (!pts.empty() && s - pts.back() < 1e-300) continue;
        pts.push_back(s);
    }
    const double seg_tol = abs_tol / static_cast<double>(std::max<std::size_t>(pts.size(), 2) - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += adaptive(f, pts[i], pts[i + 1], seg_tol, max_depth);
    }
    return total;
}

/// Fixed 5-point Gauss-Legendre on [a,b]; exact through degree 9.
template <class F>
double gauss5(const F& f, double a, double b) {
    static constexpr double xs[5] = {
        -0.9061798459386639928, -0.5384693101056830910, 0.0,
        0.5384693101056830910, 0.9061798459386639928};
    static constexpr double ws[5] = {
        0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
        0.4786286704993664680, 0.2369268850561890875};
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += ws[i] * f(c + h * xs[i]);
    return acc * h;
}

/// Least-squares line fit; returns {slope, intercept, rms residual}.
struct LineFit {
    double slope = 0, intercept = 0, rms = 0;
};

inline LineFit fit_line(const std::vector<double>& t, const std::vector<double>& x) {
    const std::size_t n = t.size();
    double st = 0, sx = 0;
    for (std::size_t i = 0; i < n; ++i) { st += t[i]; sx += x[i]; }
    const double mt = st / n, mx = sx / n;
    double sxy = 0, stt = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (t[i] - mt) * (x[i] - mx);
        stt += (t[i] - mt) * (t[i] - mt);
    }
    LineFit fit;
    fit.slope = sxy / stt;
    fit.intercept = mx - fit.slope * mt;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = x[i] - (fit.intercept + fit.slope * t[i]);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

} // namespace nlfront::quad
