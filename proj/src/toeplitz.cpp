// SPDX-License-Identifier: Apache-2.0
#include "smpde/toeplitz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "smpde/error.hpp"

namespace smpde {

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct ToeplitzConvolver::Impl {
    std::size_t n = 0;  // transform length 2 nx
    double* real = nullptr;
    fftw_complex* freq = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit Impl(std::size_t len) : n(len) {
        real = fftw_alloc_real(n);
        freq = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard lock(planner_mutex());
        forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, freq, FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq, real, FFTW_ESTIMATE);
    }

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(real);
        fftw_free(freq);
    }

    void copy_out(std::span<std::complex<double>> out) const {
        for (std::size_t k = 0; k < n / 2 + 1; ++k) out[k] = {freq[k][0], freq[k][1]};
    }
};

ToeplitzConvolver::ToeplitzConvolver(std::size_t nx) : nx_(nx), impl_(std::make_unique<Impl>(2 * nx)) {
    if (nx < 1) detail::domain_fail("toeplitz: nx must be positive");
}

ToeplitzConvolver::~ToeplitzConvolver() = default;
ToeplitzConvolver::ToeplitzConvolver(ToeplitzConvolver&&) noexcept = default;
ToeplitzConvolver& ToeplitzConvolver::operator=(ToeplitzConvolver&&) noexcept = default;

Spectrum ToeplitzConvolver::kernel_spectrum(std::span<const double> kernel) const {
    if (kernel.size() != 2 * nx_ - 1) detail::domain_fail("toeplitz: kernel must have 2 nx - 1 offsets");
    const std::size_t n = impl_->n;
    double* r = impl_->real;
    // offset k >= 0 at slot k, offset k < 0 at slot n + k; slot nx stays zero.
    for (std::size_t k = 0; k < nx_; ++k) r[k] = kernel[nx_ - 1 + k];
    r[nx_] = 0.0;
    for (std::size_t k = 1; k < nx_; ++k) r[n - k] = kernel[nx_ - 1 - k];
    fftw_execute(impl_->forward);
    Spectrum out(spectrum_size());
    impl_->copy_out(out);
    return out;
}

Spectrum ToeplitzConvolver::signal_spectrum(std::span<const double> signal) const {
    Spectrum out(spectrum_size());
    signal_spectrum(signal, out);
    return out;
}

void ToeplitzConvolver::signal_spectrum(std::span<const double> signal, std::span<std::complex<double>> out) const {
    if (signal.size() != nx_) detail::domain_fail("toeplitz: signal length mismatch");
    double* r = impl_->real;
    std::copy(signal.begin(), signal.end(), r);
    std::fill(r + nx_, r + impl_->n, 0.0);
    fftw_execute(impl_->forward);
    impl_->copy_out(out);
}

void ToeplitzConvolver::inverse(std::span<const std::complex<double>> spectrum, std::span<double> out) const {
    const std::size_t m = spectrum_size();
    for (std::size_t k = 0; k < m; ++k) {
        impl_->freq[k][0] = spectrum[k].real();
        impl_->freq[k][1] = spectrum[k].imag();
    }
    fftw_execute(impl_->backward);
    const double scale = 1.0 / static_cast<double>(impl_->n);
    for (std::size_t i = 0; i < nx_; ++i) out[i] = impl_->real[i] * scale;
}

void ToeplitzConvolver::convolve(std::span<const double> kernel, std::span<const double> signal,
                                 std::span<double> out) const {
    Spectrum a = kernel_spectrum(kernel);
    Spectrum b = signal_spectrum(signal);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
    inverse(a, out);
}

void ToeplitzConvolver::convolve_direct(std::span<const double> kernel, std::span<const double> signal,
                                        std::span<double> out) {
    const std::size_t nx = signal.size();
    if (kernel.size() != 2 * nx - 1 || out.size() != nx) detail::domain_fail("toeplitz: size mismatch");
    for (std::size_t i = 0; i < nx; ++i) {
        double s = 0.0;
        // kernel index (i - j) + nx - 1
        const double* k = kernel.data() + i + nx - 1;
        for (std::size_t j = 0; j < nx; ++j) s += k[-static_cast<std::ptrdiff_t>(j)] * signal[j];
        out[i] = s;
    }
}

}  // namespace smpde
