#include "glottal/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace glottal {

SampleBuffer::SampleBuffer(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate)
{
    if (sample_rate_ <= 0)
        throw std::invalid_argument("sample rate must be positive");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i]))
            throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
    }
}

void validate_track(const GciTrack& track, std::size_t extent)
{
    for (std::size_t i = 0; i < track.instants.size(); ++i) {
        const double t = track.instants[i];
        if (!(t >= 0.0) || t >= static_cast<double>(extent))
            throw std::invalid_argument("GCI " + std::to_string(i) + " outside the buffer");
        if (i > 0 && !(t > track.instants[i - 1]))
            throw std::invalid_argument("GCI track not strictly increasing at " + std::to_string(i));
    }
}

std::vector<double> blackman_window(std::size_t length)
{
    if (length < 4)
        throw std::invalid_argument("Blackman window needs L >= 4");
    std::vector<double> w(length);
    const double L = static_cast<double>(length);
    for (std::size_t t = 0; t < length; ++t) {
        // fold onto the first half so the window is exactly symmetric
        const std::size_t m = std::min(t, length - t);
        const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / L);
        w[t] = (1.0 - c) * (0.34 - 0.16 * c);
    }
    return w;
}

std::size_t window_length_for_period(double period)
{
    const double half = std::round(period);
    return static_cast<std::size_t>(2.0 * half);
}

Frame extract_frame(const SampleBuffer& buffer, double gci, double period)
{
    if (!(period >= 16.0))
        throw std::invalid_argument("local period must be at least 16 samples");
    const std::size_t length = window_length_for_period(period);
    const auto center = static_cast<std::int64_t>(std::llround(gci));
    const std::int64_t anchor = center - static_cast<std::int64_t>(length / 2);
    if (anchor < 0 || anchor + static_cast<std::int64_t>(length) > static_cast<std::int64_t>(buffer.size()))
        throw std::out_of_range("analysis window [" + std::to_string(anchor) + ", " +
                                std::to_string(anchor + static_cast<std::int64_t>(length)) +
                                ") exceeds buffer of " + std::to_string(buffer.size()) + " samples");

    const auto window = blackman_window(length);
    Frame frame;
    frame.window_length = length;
    frame.anchor = anchor;
    frame.nominal_gci_offset = gci - static_cast<double>(anchor);
    frame.samples.resize(length);
    const auto src = buffer.samples().subspan(static_cast<std::size_t>(anchor), length);
    for (std::size_t i = 0; i < length; ++i)
        frame.samples[i] = src[i] * window[i];
    return frame;
}

SampleBuffer difference_egg(const SampleBuffer& egg, std::int64_t delay)
{
    const auto n = static_cast<std::int64_t>(egg.size());
    if (n > 0 && std::llabs(delay) >= n)
        throw std::invalid_argument("delay compensation must be shorter than the buffer");
    const auto x = egg.samples();
    std::vector<double> diff(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i)
        diff[i] = x[i] - x[i - 1];

    std::vector<double> out(x.size(), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t src = i - delay;
        if (src >= 0 && src < n)
            out[static_cast<std::size_t>(i)] = diff[static_cast<std::size_t>(src)];
    }
    return SampleBuffer(std::move(out), egg.sample_rate());
}

GciTrack gcis_from_diff_egg(const SampleBuffer& degg, double threshold_ratio)
{
    if (!(threshold_ratio > 0.0 && threshold_ratio <= 1.0))
        throw std::invalid_argument("threshold ratio must lie in (0, 1]");
    GciTrack track;
    track.source = GciSource::egg_derived;
    const auto x = degg.samples();
    if (x.empty())
        return track;

    // Follow the polarity of the global extremum.
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    const double sign = std::abs(*mn) >= std::abs(*mx) ? -1.0 : 1.0;
    const double peak = std::max(std::abs(*mn), std::abs(*mx));
    if (peak == 0.0)
        return track;
    const double level = threshold_ratio * peak;

    const auto value = [&](std::size_t i) { return sign * x[i]; };
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = value(i);
        if (v < level)
            continue;
        const bool left = i == 0 || v > value(i - 1);
        const bool right = i + 1 == x.size() || v >= value(i + 1);
        if (left && right)
            candidates.push_back(i);
    }
    if (candidates.size() > 1) {
        std::vector<double> gaps;
        for (std::size_t i = 1; i < candidates.size(); ++i)
            gaps.push_back(static_cast<double>(candidates[i] - candidates[i - 1]));
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        const double refractory = 0.5 * gaps[gaps.size() / 2];

        // strongest peaks first, then drop anything inside their refractory zone
        std::vector<std::size_t> order = candidates;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value(a) > value(b); });
        std::vector<std::size_t> kept;
        for (const std::size_t c : order) {
            const bool clash = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
                return std::abs(static_cast<double>(c) - static_cast<double>(k)) < refractory;
            });
            if (!clash)
                kept.push_back(c);
        }
        std::sort(kept.begin(), kept.end());
        candidates = std::move(kept);
    }
    for (const std::size_t c : candidates)
        track.instants.push_back(static_cast<double>(c));
    return track;
}

} // namespace glottal
