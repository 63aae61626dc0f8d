#include "glottal/detail/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace glottal::detail {

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x)
{
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> in(x.begin(), x.end());
    std::vector<std::complex<double>> out;
    fft.fwd(out, in);
    return out;
}

std::vector<std::complex<double>> idft(std::span<const std::complex<double>> spectrum)
{
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
    std::vector<std::complex<double>> out;
    fft.inv(out, in);
    return out;
}

std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t K)
{
    std::vector<std::complex<double>> buf(K);
    for (std::size_t n = 0; n < x.size(); ++n)
        buf[n % K] += x[n];
    const auto X = dft(buf);
    std::vector<double> mag(K);
    for (std::size_t k = 0; k < K; ++k)
        mag[k] = std::abs(X[k]);
    return mag;
}

std::vector<std::complex<double>> evaluate_factored(std::span<const std::complex<double>> roots,
                                                    double scale, std::size_t power,
                                                    double radius, std::size_t K)
{
    const double log_r = std::log(radius);
    std::vector<double> logmag(K, std::log(std::abs(scale)) - static_cast<double>(power) * log_r);
    std::vector<double> phase(K, scale < 0.0 ? std::numbers::pi : 0.0);
    std::vector<std::complex<double>> z(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K);
        z[k] = std::polar(radius, w);
        phase[k] -= static_cast<double>(power) * w;
    }
    for (const auto& r : roots) {
        for (std::size_t k = 0; k < K; ++k) {
            const std::complex<double> d = z[k] - r;
            logmag[k] += std::log(std::abs(d));
            phase[k] += std::atan2(d.imag(), d.real());
        }
    }
    std::vector<std::complex<double>> out(K);
    for (std::size_t k = 0; k < K; ++k)
        out[k] = std::polar(std::exp(logmag[k]), std::remainder(phase[k], 2.0 * std::numbers::pi));
    return out;
}

} // namespace glottal::detail
