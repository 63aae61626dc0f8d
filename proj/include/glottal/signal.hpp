#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace glottal {

/// Mono sample buffer. Samples are finite; the rate is in Hz.
class SampleBuffer {
public:
    SampleBuffer() = default;
    SampleBuffer(std::vector<double> samples, int sample_rate);

    std::span<const double> samples() const noexcept { return samples_; }
    int sample_rate() const noexcept { return sample_rate_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    double operator[](std::size_t i) const { return samples_[i]; }

private:
    std::vector<double> samples_;
    int sample_rate_ = 1;
};

enum class GciSource { marker_file, egg_derived, synthetic_ground_truth };

/// Strictly increasing glottal closure instants, in (possibly fractional)
/// samples of the parent buffer.
struct GciTrack {
    std::vector<double> instants;
    GciSource source = GciSource::marker_file;

    bool empty() const noexcept { return instants.empty(); }
    std::size_t size() const noexcept { return instants.size(); }
};

/// Throws std::invalid_argument unless the instants are strictly increasing
/// and lie inside [0, extent).
void validate_track(const GciTrack& track, std::size_t extent);

/// A windowed slice of a buffer. samples.size() == window_length.
struct Frame {
    std::vector<double> samples;
    std::size_t window_length = 0;
    /// Index of the first sample in the parent buffer.
    std::int64_t anchor = 0;
    /// GCI position measured from the window start, when known.
    double nominal_gci_offset = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
};

/// Blackman window w(t) = 0.42 - 0.5 cos(2 pi t/L) + 0.08 cos(4 pi t/L) on
/// t = 0..L-1. Evaluated in the factored form (1 - c)(0.34 - 0.16 c),
/// c = cos(2 pi t/L), so w(0) is exactly zero and w(t) == w(L - t) bit for bit.
std::vector<double> blackman_window(std::size_t length);

/// Window length for a local period: 2*T0 rounded to the nearest even integer.
std::size_t window_length_for_period(double period);

/// Frame of length L = window_length_for_period(period) starting at
/// round(gci) - L/2, multiplied by the Blackman window.
/// Throws std::invalid_argument for period < 16 and std::out_of_range when the
/// window leaves the buffer.
Frame extract_frame(const SampleBuffer& buffer, double gci, double period);

/// First difference y(n) = x(n) - x(n-1) with y(0) = 0, then shifted right by
/// `delay` samples (negative values shift left); zeros fill vacated samples.
SampleBuffer difference_egg(const SampleBuffer& egg, std::int64_t delay);

/// Extrema of the differenced EGG, taken with the polarity of its global
/// extremum (negative on a tie), whose magnitude exceeds threshold_ratio times
/// that extremum.
/// A refractory distance of half the median peak spacing suppresses
/// duplicates. Returns an empty track when nothing qualifies.
GciTrack gcis_from_diff_egg(const SampleBuffer& degg, double threshold_ratio);

} // namespace glottal
