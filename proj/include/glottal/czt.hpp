#pragma once

#include "glottal/polyroots.hpp"
#include "glottal/radius.hpp"
#include "glottal/signal.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace glottal {

inline constexpr std::size_t default_grid_size = 4096;

/// Roots within this distance of the radius count as on the boundary.
inline constexpr double boundary_tolerance = 1e-9;

struct RootPartition {
    std::vector<std::complex<double>> anticausal;
    std::vector<std::complex<double>> causal;
    /// Roots within boundary_tolerance of the radius (assigned causal).
    std::size_t boundary_roots = 0;
};

/// |Z| > radius goes anticausal, everything else causal.
RootPartition split_roots(std::span<const std::complex<double>> roots, double radius);

/// X(R e^{2 pi i k/K}) for k = 0..K-1, the K-point DFT of x(n) R^{-n}.
/// Throws std::invalid_argument when K < N and NumericalRange when R^{-(N-1)}
/// is not representable.
std::vector<std::complex<double>> chirp_ztransform(std::span<const double> x, double radius,
                                                   std::size_t K);

/// gain * z^{-power}; the causal side carries the frame's gain and delay.
struct GainTerm {
    double gain = 1.0;
    std::size_t power = 0;
};

/// gain * z^{-power} * prod_m (z - roots[m]) on the circle of the given radius.
std::vector<std::complex<double>> component_spectrum(std::span<const std::complex<double>> roots,
                                                     double radius, std::size_t K,
                                                     GainTerm gain = {});

enum class Side { anticausal, causal };

struct WaveResult {
    std::vector<double> wave;
    /// max |imag| / max |sample| of the inverse transform.
    double imag_residue = 0.0;
};

/// Inverse K-point DFT. On the anticausal side, whose n_anticausal + 1
/// meaningful samples wrap to the end of the buffer, the output is rotated so
/// they occupy indices 0..n_anticausal in increasing time.
WaveResult reconstruct_wave(std::span<const std::complex<double>> spectrum, Side side,
                            std::size_t n_anticausal = 0);

/// Imaginary residue above which a reconstruction is flagged.
inline constexpr double realness_tolerance = 1e-8;

struct Strategy {
    RadiusMethod method = RadiusMethod::unit;
    /// GCI offset from the window start (ideal only).
    double t_star = 0.0;

    static Strategy unit() { return {RadiusMethod::unit, 0.0}; }
    static Strategy automatic() { return {RadiusMethod::automatic, 0.0}; }
    static Strategy ideal(double t_star) { return {RadiusMethod::ideal, t_star}; }
};

struct Decomposition {
    std::vector<std::complex<double>> anticausal_spectrum;
    std::vector<std::complex<double>> causal_spectrum;
    std::vector<double> anticausal_wave;
    std::vector<double> causal_wave;
    ChirpContour contour;
    std::size_t n_anticausal = 0;
    std::size_t n_causal = 0;
    std::size_t K = 0;
    std::vector<std::complex<double>> anticausal_roots;
    std::vector<std::complex<double>> causal_roots;
    double residual_max = 0.0;
    /// max |A C - X| / |X| over bins with |X| above 1e-12 of the peak.
    double completeness_error = 0.0;
    std::vector<std::string> warnings;

    double radius() const noexcept { return contour.radius; }
    /// The n_anticausal + 1 meaningful samples of the anticausal wave.
    std::span<const double> open_phase() const;
};

/// find_roots, radius by strategy, split, spectra, waves.
Decomposition decompose(const Frame& frame, const Strategy& strategy,
                        std::size_t K = default_grid_size);

/// Same, reusing roots computed earlier for this frame.
Decomposition decompose(const Frame& frame, const RootSet& roots, const Strategy& strategy,
                        std::size_t K = default_grid_size);

ChirpContour select_contour(const RootSet& roots, std::size_t window_length, const Strategy& strategy);

} // namespace glottal
