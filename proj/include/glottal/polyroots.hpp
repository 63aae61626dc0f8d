#pragma once

#include "glottal/signal.hpp"

#include <complex>
#include <span>
#include <vector>

namespace glottal {

/// Zeros of X(z) = sum_{n=0}^{N-1} x(n) z^{-n}, written as
///   X(z) = gain * z^{-(N-1)} * prod_m (z - roots[m]).
/// `gain` is the first nonzero sample; leading exact zeros (the delay) drop
/// the degree and trailing exact zeros appear as roots at the origin.
struct RootSet {
    std::vector<std::complex<double>> roots;
    double gain = 0.0;
    std::size_t delay = 0;
    std::size_t length = 0;
    /// Worst relative residual of the factored form on the verification circles.
    double residual_max = 0.0;

    std::size_t degree() const noexcept { return roots.size(); }
};

struct RefineOptions {
    int max_iterations = 50;
    /// Stop once every correction is below tolerance * |z|.
    double tolerance = 1e-12;
    /// Degrees above this use double-double Horner evaluation. Below it, a
    /// second double-double pass runs when the first one does not converge.
    std::size_t compensated_above = 256;
};

/// Roots of a frame. Verification uses the circles at the selection bounds of
/// the frame's window length.
/// Throws DegenerateInput for an all-zero frame and NumericalFailure when the
/// verification residual exceeds 1e-6.
RootSet find_roots(const Frame& frame);

/// Same for a raw coefficient sequence x(0..N-1); `radii` are the
/// verification circles.
RootSet find_roots(std::span<const double> samples, std::span<const double> radii);

/// Max over the given circles of max_k |P(z_k) - Q(z_k)| / max_k |P(z_k)|,
/// where P is the polynomial evaluated by a 1024-point DFT of x(n) r^{-n} and
/// Q is the factored form.
double verify_roots(std::span<const double> samples, const RootSet& roots,
                    std::span<const double> radii);

/// verify_roots on the selection-bound circles of the frame's window length.
double verify_roots(const Frame& frame, const RootSet& roots);

/// Simultaneous Aberth-Ehrlich refinement of `initial` against the polynomial
/// coefficients[0] z^d + coefficients[1] z^{d-1} + ... + coefficients[d].
/// Throws NumericalFailure when an iterate becomes non-finite or corrections
/// remain gross (above 1e-4 |z|) after the iteration budget.
std::vector<std::complex<double>> refine_roots(std::span<const double> coefficients,
                                               std::vector<std::complex<double>> initial,
                                               const RefineOptions& options = {});

/// Eigenvalues of the balanced companion matrix of the same polynomial.
/// coefficients[0] must be nonzero.
std::vector<std::complex<double>> companion_roots(std::span<const double> coefficients);

} // namespace glottal
