#include "glottal/czt.hpp"

#include "glottal/detail/fft.hpp"
#include "glottal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace glottal {

using cplx = std::complex<double>;

RootPartition split_roots(std::span<const cplx> roots, double radius)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("radius must be positive");
    RootPartition p;
    for (const auto& z : roots) {
        const double m = std::abs(z);
        if (std::abs(m - radius) < boundary_tolerance) {
            ++p.boundary_roots;
            p.causal.push_back(z);
        } else if (m > radius) {
            p.anticausal.push_back(z);
        } else {
            p.causal.push_back(z);
        }
    }
    return p;
}

std::vector<cplx> chirp_ztransform(std::span<const double> x, double radius, std::size_t K)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("radius must be positive");
    if (K < x.size() || K == 0)
        throw std::invalid_argument("grid size K must be at least the frame length");
    const double log_r = std::log(radius);
    const double extreme = std::abs(log_r) * static_cast<double>(x.empty() ? 0 : x.size() - 1);
    if (extreme > std::log(std::numeric_limits<double>::max()) - 1.0)
        throw NumericalRange("radius " + std::to_string(radius) + " leaves the double range over the frame");
    std::vector<cplx> mod(K);
    for (std::size_t n = 0; n < x.size(); ++n)
        mod[n] = x[n] * std::exp(-static_cast<double>(n) * log_r);
    return detail::dft(mod);
}

std::vector<cplx> component_spectrum(std::span<const cplx> roots, double radius, std::size_t K,
                                     GainTerm gain)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("radius must be positive");
    if (K == 0)
        throw std::invalid_argument("grid size must be positive");
    return detail::evaluate_factored(roots, gain.gain, gain.power, radius, K);
}

WaveResult reconstruct_wave(std::span<const cplx> spectrum, Side side, std::size_t n_anticausal)
{
    const std::size_t K = spectrum.size();
    if (K == 0)
        throw std::invalid_argument("empty spectrum");
    const auto raw = detail::idft(spectrum);
    WaveResult r;
    r.wave.resize(K);
    double peak = 0.0;
    double imag = 0.0;
    const std::size_t shift = side == Side::anticausal ? n_anticausal % K : 0;
    for (std::size_t i = 0; i < K; ++i) {
        const cplx v = raw[(i + K - shift) % K];
        r.wave[i] = v.real();
        peak = std::max(peak, std::abs(v.real()));
        imag = std::max(imag, std::abs(v.imag()));
    }
    r.imag_residue = peak > 0.0 ? imag / peak : (imag > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return r;
}

std::span<const double> Decomposition::open_phase() const
{
    const std::size_t n = std::min(anticausal_wave.size(), n_anticausal + 1);
    return std::span<const double>(anticausal_wave).first(n);
}

ChirpContour select_contour(const RootSet& roots, std::size_t window_length, const Strategy& strategy)
{
    const double L = static_cast<double>(window_length);
    switch (strategy.method) {
    case RadiusMethod::unit:
        return unit_contour(L);
    case RadiusMethod::ideal:
        return ideal_radius(strategy.t_star, L);
    case RadiusMethod::automatic:
        return auto_radius(roots.roots, L);
    }
    throw std::invalid_argument("unknown radius strategy");
}

Decomposition decompose(const Frame& frame, const RootSet& roots, const Strategy& strategy, std::size_t K)
{
    const std::size_t N = frame.size();
    if (roots.length != N)
        throw std::invalid_argument("root set does not belong to this frame");
    if (K < N)
        throw std::invalid_argument("grid size K must be at least the frame length");

    Decomposition d;
    d.K = K;
    d.residual_max = roots.residual_max;
    d.contour = select_contour(roots, frame.window_length ? frame.window_length : N, strategy);

    auto part = split_roots(roots.roots, d.contour.radius);
    if (part.boundary_roots > 0) {
        std::ostringstream os;
        os << part.boundary_roots << " root(s) within " << boundary_tolerance
           << " of the contour radius " << d.contour.radius << " assigned causal";
        d.warnings.push_back(os.str());
    }
    d.n_anticausal = part.anticausal.size();
    d.n_causal = part.causal.size();

    const double R = d.contour.radius;
    d.anticausal_spectrum = component_spectrum(part.anticausal, R, K);
    d.causal_spectrum = component_spectrum(part.causal, R, K, GainTerm{roots.gain, N - 1});

    const auto x = chirp_ztransform(frame.samples, R, K);
    double peak = 0.0;
    for (const auto& v : x)
        peak = std::max(peak, std::abs(v));
    for (std::size_t k = 0; k < K; ++k) {
        const double mag = std::abs(x[k]);
        if (mag <= 1e-12 * peak)
            continue;
        const cplx prod = d.anticausal_spectrum[k] * d.causal_spectrum[k];
        d.completeness_error = std::max(d.completeness_error, std::abs(prod - x[k]) / mag);
    }

    auto a = reconstruct_wave(d.anticausal_spectrum, Side::anticausal, d.n_anticausal);
    auto c = reconstruct_wave(d.causal_spectrum, Side::causal);
    for (const auto* w : {&a, &c}) {
        if (w->imag_residue > realness_tolerance) {
            std::ostringstream os;
            os << (w == &a ? "anticausal" : "causal") << " wave has imaginary residue "
               << w->imag_residue;
            d.warnings.push_back(os.str());
        }
    }
    d.anticausal_wave = std::move(a.wave);
    d.causal_wave = std::move(c.wave);
    d.anticausal_roots = std::move(part.anticausal);
    d.causal_roots = std::move(part.causal);
    return d;
}

Decomposition decompose(const Frame& frame, const Strategy& strategy, std::size_t K)
{
    const auto roots = find_roots(frame);
    return decompose(frame, roots, strategy, K);
}

} // namespace glottal
