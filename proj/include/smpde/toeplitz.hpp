// SPDX-License-Identifier: Apache-2.0
// Linear convolution of grid signals with translation-invariant kernels.
//
// A kernel is stored on the offsets k = -(nx-1) .. nx-1 (index k + nx - 1) and
// acts as out[i] = sum_j K[i - j] w[j] for i, j in [0, nx). The fast path
// embeds both in a circulant of length 2 nx, which reproduces the truncated
// linear convolution exactly, and runs through FFTW real transforms.
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace smpde {

using Spectrum = std::vector<std::complex<double>>;

class ToeplitzConvolver {
public:
    explicit ToeplitzConvolver(std::size_t nx);
    ~ToeplitzConvolver();
    ToeplitzConvolver(ToeplitzConvolver&&) noexcept;
    ToeplitzConvolver& operator=(ToeplitzConvolver&&) noexcept;
    ToeplitzConvolver(const ToeplitzConvolver&) = delete;
    ToeplitzConvolver& operator=(const ToeplitzConvolver&) = delete;

    std::size_t nx() const { return nx_; }
    /// Number of retained frequencies (nx + 1).
    std::size_t spectrum_size() const { return nx_ + 1; }

    /// Spectrum of a kernel given on offsets -(nx-1)..nx-1 (length 2 nx - 1).
    Spectrum kernel_spectrum(std::span<const double> kernel) const;
    /// Spectrum of a zero-padded signal of length nx.
    Spectrum signal_spectrum(std::span<const double> signal) const;
    void signal_spectrum(std::span<const double> signal, std::span<std::complex<double>> out) const;
    /// Inverse transform; writes the first nx samples into `out`.
    void inverse(std::span<const std::complex<double>> spectrum, std::span<double> out) const;

    void convolve(std::span<const double> kernel, std::span<const double> signal, std::span<double> out) const;

    /// Reference O(nx^2) summation.
    static void convolve_direct(std::span<const double> kernel, std::span<const double> signal,
                                std::span<double> out);

private:
    struct Impl;
    std::size_t nx_ = 0;
    std::unique_ptr<Impl> impl_;
};

/// Selects the summation reference or the transform path.
enum class ConvolutionMethod { direct, fft };

}  // namespace smpde
