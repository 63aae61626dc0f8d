#pragma once

#include <complex>
#include <span>
#include <vector>

namespace glottal {

enum class RadiusMethod { unit, ideal, automatic };

const char* to_string(RadiusMethod method) noexcept;

/// Interval of root moduli searched by the automatic radius:
/// [exp(-50 pi / (17 L)), exp(50 pi / (17 L))].
struct SelectionBounds {
    double lo = 1.0;
    double hi = 1.0;
};

SelectionBounds selection_bounds(double window_length);

/// Circle |z| = radius on which the chirp z-transform is evaluated.
struct ChirpContour {
    double radius = 1.0;
    RadiusMethod method = RadiusMethod::unit;
    /// Width of the modulus gap containing the radius (automatic only).
    double gap_width = 0.0;
    SelectionBounds bounds;
};

/// Root moduli sorted ascending, with [band_begin, band_end) indexing those
/// inside the selection bounds.
struct ModuliProfile {
    std::vector<double> moduli;
    std::size_t band_begin = 0;
    std::size_t band_end = 0;
};

ModuliProfile moduli_profile(std::span<const std::complex<double>> roots, SelectionBounds bounds);

ChirpContour unit_contour(double window_length);

/// Radius for a GCI at t_star samples from the window start:
///   R = exp(2 pi / L * (9 c^3 + 41 c) / (9 c^2 + 25)),  c = cot(pi t_star / L).
/// Exactly 1 when 2 t_star == L. Throws std::invalid_argument unless
/// 0 < t_star < L.
ChirpContour ideal_radius(double t_star, double window_length);

/// Clamps a GCI offset into [L/4, 3L/4].
double clamp_gci_offset(double t_star, double window_length);

/// Midpoint of the widest gap between consecutive sorted moduli inside the
/// selection bounds, with the bounds themselves as sentinels. Equal widths go
/// to the midpoint nearest 1.
ChirpContour auto_radius(std::span<const std::complex<double>> roots, double window_length);

} // namespace glottal
