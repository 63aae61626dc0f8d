#pragma once

#include <cstddef>
#include <vector>

namespace glottal {

/// Liljencrants-Fant glottal flow derivative parameters.
struct LFParams {
    double open_quotient = 0.6;   ///< Oq, fraction of T0, in [0.4, 0.9]
    double asymmetry = 0.7;       ///< alpha_m, fraction of the open phase, in [0.6, 0.9]
    double f0 = 100.0;            ///< Hz, in [60, 180]
    /// Return-phase time constant Ta as a fraction of the closed phase
    /// T0 - te, in [0, 1). Zero gives an abrupt closure.
    double return_quotient = 0.1;
    double excitation = 1.0;      ///< Ee > 0, magnitude of the negative peak
};

/// Throws std::invalid_argument outside the parameter box.
void validate(const LFParams& params);

/// Solved LF waveform constants, time in samples.
struct LFShape {
    std::size_t period = 0;
    std::size_t te = 0;       ///< GCI, round(Oq * T0)
    double tp = 0.0;          ///< alpha_m * te
    double omega_g = 0.0;     ///< pi / tp
    double ta = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;     ///< zero for an abrupt return
    double e0 = 0.0;
    double excitation = 1.0;

    double value(std::size_t n) const;
};

/// Solves epsilon from epsilon Ta = 1 - exp(-epsilon (T0 - te)) and alpha so
/// the samples of one period sum to zero. Throws NumericalFailure if a solver
/// does not converge.
LFShape solve_lf(const LFParams& params, std::size_t period_samples);

/// One period of the flow derivative: E0 exp(alpha n) sin(omega_g n) for
/// n <= te, then -(Ee/(eps Ta)) (exp(-eps (n - te)) - exp(-eps (T0 - te))).
/// The minimum -Ee sits at n = te.
std::vector<double> lf_pulse(const LFParams& params, std::size_t period_samples);

} // namespace glottal
