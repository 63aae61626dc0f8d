#pragma once

#include <complex>
#include <span>
#include <vector>

namespace glottal::detail {

/// X[k] = sum_n x[n] exp(-2 pi i k n / N).
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x);

/// x[n] = (1/N) sum_k X[k] exp(+2 pi i k n / N).
std::vector<std::complex<double>> idft(std::span<const std::complex<double>> spectrum);

/// Magnitudes of the K-point DFT of a real sequence zero-padded (or folded,
/// when longer than K) to K samples.
std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t K);

/// Evaluates scale * z^{-power} * prod_m (z - roots[m]) at z_k = R exp(2 pi i k/K),
/// k = 0..K-1, accumulating log-magnitude and phase per factor so that
/// products over hundreds of roots stay within range.
std::vector<std::complex<double>> evaluate_factored(std::span<const std::complex<double>> roots,
                                                    double scale, std::size_t power,
                                                    double radius, std::size_t K);

} // namespace glottal::detail
