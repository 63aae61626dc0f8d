#include "glottal/metrics.hpp"

#include "glottal/detail/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace glottal {

std::optional<double> glottal_formant_frequency(std::span<const std::complex<double>> spectrum,
                                                int sample_rate, double f0_hint, double cap_hz)
{
    const std::size_t K = spectrum.size();
    if (K < 4 || sample_rate <= 0 || !(f0_hint > 0.0) || !(cap_hz > 0.0))
        throw std::invalid_argument("bad spectrum size, rate, F0 hint or band cap");
    const double top = std::min(8.0 * f0_hint, cap_hz);
    auto kmax = static_cast<std::size_t>(std::floor(top * static_cast<double>(K) / sample_rate));
    kmax = std::min(kmax, K / 2);
    if (kmax < 1)
        return std::nullopt;

    std::size_t best = 1;
    double peak = std::abs(spectrum[1]);
    double low = peak;
    for (std::size_t k = 2; k <= kmax; ++k) {
        const double m = std::abs(spectrum[k]);
        low = std::min(low, m);
        if (m > peak) {
            peak = m;
            best = k;
        }
    }
    if (!(peak > 0.0) || !std::isfinite(peak) || peak == low)
        return std::nullopt;

    double delta = 0.0;
    const double a = std::log(std::abs(spectrum[best - 1]));
    const double b = std::log(peak);
    const double c = std::log(std::abs(spectrum[best + 1]));
    const double den = a - 2.0 * b + c;
    if (std::isfinite(a) && std::isfinite(c) && den < 0.0)
        delta = std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
    return (static_cast<double>(best) + delta) * sample_rate / static_cast<double>(K);
}

std::vector<double> reference_open_phase(const TestCondition& condition)
{
    const std::size_t T0 = period_samples(condition.lf.f0, condition.sample_rate);
    const LFShape shape = solve_lf(condition.lf, T0);
    const auto w = blackman_window(2 * T0);
    std::vector<double> ref(shape.te + 1);
    for (std::size_t n = 0; n <= shape.te; ++n)
        ref[n] = shape.value(n) * w[T0 - shape.te + n];
    return ref;
}

std::optional<double> reference_fg(const TestCondition& condition, std::size_t K, double cap_hz)
{
    const auto ref = reference_open_phase(condition);
    std::vector<std::complex<double>> buf(K);
    for (std::size_t n = 0; n < ref.size(); ++n)
        buf[n % K] += ref[n];
    const auto spec = detail::dft(buf);
    return glottal_formant_frequency(spec, condition.sample_rate, condition.lf.f0, cap_hz);
}

bool is_determined(std::optional<double> relative_error)
{
    return relative_error.has_value() && *relative_error < determination_threshold;
}

SdResult spectral_distortion(std::span<const double> reference, std::span<const double> estimate,
                             std::size_t K, bool normalize)
{
    if (reference.empty() || estimate.empty() || K < 4)
        throw std::invalid_argument("spectral distortion needs two non-empty waves and K >= 4");
    const auto X = detail::magnitude_spectrum(reference, K);
    const auto Y = detail::magnitude_spectrum(estimate, K);
    const std::size_t half = K / 2;
    double px = 0.0;
    double py = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
        px = std::max(px, X[k]);
        py = std::max(py, Y[k]);
    }
    std::vector<double> d;
    d.reserve(half);
    for (std::size_t k = 1; k <= half; ++k) {
        if (X[k] < 1e-5 * px || Y[k] < 1e-5 * py || X[k] == 0.0 || Y[k] == 0.0)
            continue;
        d.push_back(20.0 * std::log10(X[k]) - 20.0 * std::log10(Y[k]));
    }
    SdResult r;
    r.bins = d.size();
    r.reliable = d.size() >= 8;
    if (d.empty())
        return r;
    double mean = 0.0;
    if (normalize)
        mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    double acc = 0.0;
    for (const double v : d)
        acc += (v - mean) * (v - mean);
    r.value = std::sqrt(acc / static_cast<double>(d.size()));
    return r;
}

double normalized_cross_correlation(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("cross-correlation of an empty sequence");
    const double na = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
    const double nb = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    const auto la = static_cast<std::ptrdiff_t>(a.size());
    const auto lb = static_cast<std::ptrdiff_t>(b.size());
    double best = 0.0;
    for (std::ptrdiff_t lag = -(lb - 1); lag < la; ++lag) {
        double acc = 0.0;
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, lag);
        const std::ptrdiff_t hi = std::min(la, lb + lag);
        for (std::ptrdiff_t n = lo; n < hi; ++n)
            acc += a[static_cast<std::size_t>(n)] * b[static_cast<std::size_t>(n - lag)];
        best = std::max(best, std::abs(acc));
    }
    return best / (na * nb);
}

double determination_rate(std::span<const MetricsReport> reports)
{
    if (reports.empty())
        throw std::invalid_argument("determination rate of an empty collection");
    const auto n = std::count_if(reports.begin(), reports.end(),
                                 [](const MetricsReport& r) { return !r.failed() && r.determined; });
    return 100.0 * static_cast<double>(n) / static_cast<double>(reports.size());
}

double determination_rate(std::span<const std::optional<double>> relative_errors)
{
    if (relative_errors.empty())
        throw std::invalid_argument("determination rate of an empty collection");
    const auto n = std::count_if(relative_errors.begin(), relative_errors.end(), is_determined);
    return 100.0 * static_cast<double>(n) / static_cast<double>(relative_errors.size());
}

} // namespace glottal
