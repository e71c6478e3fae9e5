#include "nlfront/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>

#include "nlfront/quadrature.hpp"

namespace nlfront {

namespace {

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// Exact kernel mass over one cell [a, b], 0 <= a < b. Differences of the
// closed-form tail integral keep full relative precision out in the far
// tail (CDF differences would cancel catastrophically there); the
// log-sublinear family has no closed tail, so integrate the cell directly
// with a split at the splice kink.
double cell_mass(const KernelSpec& kernel, double a, double b) {
    if (kernel.family() != KernelFamily::LogSublinear)
        return kernel.tail_mass(a) - kernel.tail_mass(b);
    const double splice = kernel.splice_radius();
    const auto f = [&kernel](double s) { return kernel.evaluate(s); };
    if (b <= splice) return kernel.core_value() * (b - a);
    if (a >= splice) return quad::gauss5(f, a, b);
    return kernel.core_value() * (splice - a) + quad::gauss5(f, splice, b);
}

} // namespace

struct ConvolutionPlan::FftState {
    std::size_t padded = 0;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    std::vector<std::complex<double>> kernel_hat;

    ~FftState() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (real_buf) fftw_free(real_buf);
        if (cplx_buf) fftw_free(cplx_buf);
    }
};

ConvolutionPlan::ConvolutionPlan(const Grid1D& grid, const KernelSpec& kernel, double deficit_max)
    : grid_(grid) {
    const int n = grid_.n;
    const double dx = grid_.dx;

    // Cell-mass weights for lags 0..n-1. The m = 0 cell is [-dx/2, dx/2].
    weights_.resize(n);
    if (kernel.family() == KernelFamily::LogSublinear) {
        weights_[0] = 2.0 * cell_mass(kernel, 0.0, 0.5 * dx);
        for (int m = 1; m < n; ++m)
            weights_[m] = cell_mass(kernel, (m - 0.5) * dx, (m + 0.5) * dx);
    } else {
        double prev = kernel.tail_mass(0.5 * dx);
        weights_[0] = 2.0 * (kernel.tail_mass(0.0) - prev);
        for (int m = 1; m < n; ++m) {
            const double cur = kernel.tail_mass((m + 0.5) * dx);
            weights_[m] = prev - cur;
            prev = cur;
        }
    }

    double sum = weights_[0], comp = 0.0;  // Kahan: deficit is a small difference
    for (int m = 1; m < n; ++m) {
        const double w = 2.0 * weights_[m];
        const double y = w - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    deficit_ = 1.0 - sum;
    if (deficit_ < 0.0) {
        if (deficit_ < -1e-10)
            throw std::logic_error("convolution weights exceed unit mass");
        deficit_ = 0.0;
    }
    if (deficit_ > deficit_max)
        throw DivergenceError("kernel mass deficit " + std::to_string(deficit_) +
                              " exceeds deficit_max; domain too small for this kernel");

    // FFT of the lag window m = -(n-1)..(n-1), wrapped into padded length.
    fft_ = std::make_unique<FftState>();
    fft_->padded = next_pow2(2 * static_cast<std::size_t>(n));
    const std::size_t N = fft_->padded;
    fft_->real_buf = fftw_alloc_real(N);
    fft_->cplx_buf = fftw_alloc_complex(N / 2 + 1);
    fft_->fwd = fftw_plan_dft_r2c_1d(static_cast<int>(N), fft_->real_buf, fft_->cplx_buf,
                                     FFTW_ESTIMATE);
    fft_->bwd = fftw_plan_dft_c2r_1d(static_cast<int>(N), fft_->cplx_buf, fft_->real_buf,
                                     FFTW_ESTIMATE);

    std::memset(fft_->real_buf, 0, N * sizeof(double));
    fft_->real_buf[0] = weights_[0];
    for (int m = 1; m < n; ++m) {
        fft_->real_buf[m] = weights_[m];
        fft_->real_buf[N - m] = weights_[m];
    }
    fftw_execute(fft_->fwd);
    fft_->kernel_hat.resize(N / 2 + 1);
    for (std::size_t k = 0; k <= N / 2; ++k)
        fft_->kernel_hat[k] = {fft_->cplx_buf[k][0], fft_->cplx_buf[k][1]};
}

ConvolutionPlan::~ConvolutionPlan() = default;
ConvolutionPlan::ConvolutionPlan(ConvolutionPlan&&) noexcept = default;
ConvolutionPlan& ConvolutionPlan::operator=(ConvolutionPlan&&) noexcept = default;

void ConvolutionPlan::check_grid(const Field& field) const {
    if (!(field.grid == grid_))
        throw GridMismatchError("field grid does not match the convolution plan");
}

void ConvolutionPlan::convolve_into(std::span<const double> u, std::span<double> out) const {
    const int n = grid_.n;
    if (u.size() != static_cast<std::size_t>(n) || out.size() != static_cast<std::size_t>(n))
        throw GridMismatchError("convolve: size mismatch");
    const std::size_t N = fft_->padded;

    std::memcpy(fft_->real_buf, u.data(), n * sizeof(double));
    std::memset(fft_->real_buf + n, 0, (N - n) * sizeof(double));
    fftw_execute(fft_->fwd);
    for (std::size_t k = 0; k <= N / 2; ++k) {
        const std::complex<double> v{fft_->cplx_buf[k][0], fft_->cplx_buf[k][1]};
        const std::complex<double> p = v * fft_->kernel_hat[k];
        fft_->cplx_buf[k][0] = p.real();
        fft_->cplx_buf[k][1] = p.imag();
    }
    fftw_execute(fft_->bwd);
    const double scale = 1.0 / static_cast<double>(N);
    for (int i = 0; i < n; ++i) out[i] = fft_->real_buf[i] * scale;
}

Field ConvolutionPlan::convolve(const Field& field) const {
    check_grid(field);
    Field result(grid_, field.time);
    convolve_into(field.values, result.values);
    return result;
}

void ConvolutionPlan::nonlocal_into(std::span<const double> u, std::span<double> out) const {
    convolve_into(u, out);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] -= u[i];
}

Field ConvolutionPlan::nonlocal_operator(const Field& field) const {
    check_grid(field);
    Field result(grid_, field.time);
    nonlocal_into(field.values, result.values);
    return result;
}

std::vector<double> convolve_direct(const ConvolutionPlan& plan, std::span<const double> u) {
    const int n = plan.grid().n;
    const auto w = plan.kernel_samples();
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += w[std::abs(i - j)] * u[j];
        out[i] = acc;
    }
    return out;
}

} // namespace nlfront
