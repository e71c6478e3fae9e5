#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nlfront/grid.hpp"
#include "nlfront/kernels.hpp"

namespace nlfront {

/// Discrete convolution operator u -> J*u on a fixed grid.
///
/// The kernel weights are exact cell masses w_m = integral of J over
/// [(m-1/2)dx, (m+1/2)dx] for lags m = -(n-1)..(n-1), so their sum never
/// exceeds one and `deficit` = 1 - sum(w) equals the kernel mass falling
/// outside the representable lag window. The product is evaluated as a
/// zero-padded linear convolution via FFT (never circular: wrap-around
/// would re-inject the front at the far boundary).
///
/// The plan owns FFT scratch buffers; concurrent convolve calls on one plan
/// are not supported (clone the plan per thread instead).
class ConvolutionPlan {
  public:
    ConvolutionPlan(const Grid1D& grid, const KernelSpec& kernel, double deficit_max = 1e-3);
    ~ConvolutionPlan();

    ConvolutionPlan(const ConvolutionPlan&) = delete;
    ConvolutionPlan& operator=(const ConvolutionPlan&) = delete;
    ConvolutionPlan(ConvolutionPlan&&) noexcept;
    ConvolutionPlan& operator=(ConvolutionPlan&&) noexcept;

    const Grid1D& grid() const { return grid_; }
    double deficit() const { return deficit_; }
    /// Weights for lags m = 0..n-1 (the negative side mirrors by evenness).
    std::span<const double> kernel_samples() const { return weights_; }

    /// J*u into `out` (both length n). O(n log n).
    void convolve_into(std::span<const double> u, std::span<double> out) const;
    Field convolve(const Field& field) const;

    /// J*u - u.
    void nonlocal_into(std::span<const double> u, std::span<double> out) const;
    Field nonlocal_operator(const Field& field) const;

  private:
    void check_grid(const Field& field) const;

    Grid1D grid_;
    std::vector<double> weights_;  // m = 0..n-1
    double deficit_ = 0.0;

    struct FftState;
    std::unique_ptr<FftState> fft_;
};

/// Reference O(n^2) direct sum with the same weights; the test oracle for
/// the FFT path.
std::vector<double> convolve_direct(const ConvolutionPlan& plan, std::span<const double> u);

} // namespace nlfront
