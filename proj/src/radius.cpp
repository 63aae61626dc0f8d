#include "glottal/radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace glottal {

const char* to_string(RadiusMethod method) noexcept
{
    switch (method) {
    case RadiusMethod::unit: return "unit";
    case RadiusMethod::ideal: return "ideal";
    case RadiusMethod::automatic: return "auto";
    }
    return "?";
}

SelectionBounds selection_bounds(double window_length)
{
    if (!(window_length > 0.0))
        throw std::invalid_argument("window length must be positive");
    const double e = 50.0 * std::numbers::pi / (17.0 * window_length);
    return {std::exp(-e), std::exp(e)};
}

ModuliProfile moduli_profile(std::span<const std::complex<double>> roots, SelectionBounds bounds)
{
    ModuliProfile p;
    p.moduli.reserve(roots.size());
    for (const auto& r : roots)
        p.moduli.push_back(std::abs(r));
    std::sort(p.moduli.begin(), p.moduli.end());
    p.band_begin = static_cast<std::size_t>(
        std::lower_bound(p.moduli.begin(), p.moduli.end(), bounds.lo) - p.moduli.begin());
    p.band_end = static_cast<std::size_t>(
        std::upper_bound(p.moduli.begin(), p.moduli.end(), bounds.hi) - p.moduli.begin());
    return p;
}

ChirpContour unit_contour(double window_length)
{
    ChirpContour c;
    c.method = RadiusMethod::unit;
    c.bounds = selection_bounds(window_length);
    return c;
}

ChirpContour ideal_radius(double t_star, double window_length)
{
    if (!(window_length > 0.0) || !(t_star > 0.0) || !(t_star < window_length))
        throw std::invalid_argument("GCI offset must lie strictly inside the window");
    ChirpContour c;
    c.method = RadiusMethod::ideal;
    c.bounds = selection_bounds(window_length);
    if (2.0 * t_star == window_length) {
        c.radius = 1.0;
        return c;
    }
    const double x = std::numbers::pi * t_star / window_length;
    const double ct = std::cos(x) / std::sin(x);
    const double ratio = (9.0 * ct * ct * ct + 41.0 * ct) / (9.0 * ct * ct + 25.0);
    c.radius = std::exp(2.0 * std::numbers::pi / window_length * ratio);
    return c;
}

double clamp_gci_offset(double t_star, double window_length)
{
    return std::clamp(t_star, 0.25 * window_length, 0.75 * window_length);
}

ChirpContour auto_radius(std::span<const std::complex<double>> roots, double window_length)
{
    ChirpContour c;
    c.method = RadiusMethod::automatic;
    c.bounds = selection_bounds(window_length);
    const auto profile = moduli_profile(roots, c.bounds);

    std::vector<double> seq;
    seq.reserve(profile.band_end - profile.band_begin + 2);
    seq.push_back(c.bounds.lo);
    for (std::size_t i = profile.band_begin; i < profile.band_end; ++i)
        seq.push_back(profile.moduli[i]);
    seq.push_back(c.bounds.hi);

    double best_width = -1.0;
    double best_mid = 1.0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const double width = seq[i] - seq[i - 1];
        const double mid = 0.5 * (seq[i] + seq[i - 1]);
        if (width > best_width ||
            (width == best_width && std::abs(mid - 1.0) < std::abs(best_mid - 1.0))) {
            best_width = width;
            best_mid = mid;
        }
    }
    c.radius = best_mid;
    c.gap_width = best_width;
    return c;
}

} // namespace glottal
