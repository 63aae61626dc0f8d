#pragma once

#include "glottal/radius.hpp"
#include "glottal/synth.hpp"

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glottal {

/// Relative Fg error below which a frame counts as determined.
inline constexpr double determination_threshold = 0.20;

inline constexpr double default_fg_cap_hz = 1000.0;

/// Peak of |spectrum| over bins 1..floor(min(8 F0, cap) K / Fs), refined by a
/// parabola through the log magnitudes of the peak and its two neighbours.
/// Empty when the band is flat or the spectrum is zero there.
std::optional<double> glottal_formant_frequency(std::span<const std::complex<double>> spectrum,
                                                int sample_rate, double f0_hint,
                                                double cap_hz = default_fg_cap_hz);

/// The reference open phase: LF samples 0..te multiplied by the rising half
/// of the analysis window centred on the GCI, i.e. Blackman(2 T0) samples
/// T0 - te .. T0.
std::vector<double> reference_open_phase(const TestCondition& condition);

/// glottal_formant_frequency of the K-point spectrum of the reference open phase.
std::optional<double> reference_fg(const TestCondition& condition, std::size_t K = 4096,
                                   double cap_hz = default_fg_cap_hz);

/// True iff the relative error is present and strictly below 20 %.
bool is_determined(std::optional<double> relative_error);

struct SdResult {
    double value = 0.0;   ///< dB
    std::size_t bins = 0; ///< bins entering the average
    bool reliable = false;
};

/// Discrete spectral distortion: RMS over bins k = 1..K/2 of
/// 20 log10 |X_k| - 20 log10 |Y_k|, skipping bins where either magnitude is
/// below 1e-5 of its own peak; the mean is removed first when `normalize`.
/// Fewer than 8 bins marks the result unreliable.
SdResult spectral_distortion(std::span<const double> reference, std::span<const double> estimate,
                             std::size_t K = 4096, bool normalize = true);

/// max over lags of |sum_n a(n) b(n - lag)| / (|a| |b|).
double normalized_cross_correlation(std::span<const double> a, std::span<const double> b);

struct MetricsReport {
    TestCondition condition;
    std::string frame_id;
    RadiusMethod strategy = RadiusMethod::unit;
    std::optional<double> fg_est;
    std::optional<double> fg_ref;
    std::optional<double> fg_rel_error;
    bool determined = false;
    double spectral_distortion = 0.0;
    bool sd_reliable = false;
    double ncc = 0.0;
    double radius = 1.0;
    double gap_width = 0.0;
    std::size_t n_anticausal = 0;
    std::size_t degree = 0;
    double residual_max = 0.0;
    double completeness_error = 0.0;
    std::vector<std::string> warnings;
    /// Non-empty when the cell failed; the metric fields are then meaningless.
    std::string error;

    bool failed() const noexcept { return !error.empty(); }
};

/// Percentage of reports with determined == true. Failed cells count as not
/// determined. Throws std::invalid_argument on empty input.
double determination_rate(std::span<const MetricsReport> reports);

/// Same over raw relative errors (empty entries count as not determined).
double determination_rate(std::span<const std::optional<double>> relative_errors);

} // namespace glottal
