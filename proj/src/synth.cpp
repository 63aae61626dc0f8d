#include "glottal/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace glottal {

void validate(const TestCondition& c)
{
    validate(c.lf);
    if (!(std::abs(c.gci_error) <= 0.5 + 1e-12))
        throw std::invalid_argument("GCI error outside [-0.5, 0.5] of T0");
    if (c.sample_rate <= 0)
        throw std::invalid_argument("sample rate must be positive");
}

std::size_t period_samples(double f0, int sample_rate)
{
    if (!(f0 > 0.0) || sample_rate <= 0)
        throw std::invalid_argument("F0 and sample rate must be positive");
    return static_cast<std::size_t>(std::llround(static_cast<double>(sample_rate) / f0));
}

SyntheticUtterance synthesize(const TestCondition& condition, std::size_t periods)
{
    validate(condition);
    if (periods < 4)
        throw std::invalid_argument("need at least 4 periods");
    const std::size_t T0 = period_samples(condition.lf.f0, condition.sample_rate);
    const LFShape shape = solve_lf(condition.lf, T0);

    std::vector<double> pulse(T0);
    for (std::size_t n = 0; n < T0; ++n)
        pulse[n] = shape.value(n);
    std::vector<double> g;
    g.reserve(T0 * periods);
    GciTrack gcis;
    gcis.source = GciSource::synthetic_ground_truth;
    for (std::size_t k = 0; k < periods; ++k) {
        g.insert(g.end(), pulse.begin(), pulse.end());
        gcis.instants.push_back(static_cast<double>(k * T0 + shape.te));
    }
    const auto filt = vowel_filter(condition.vowel, condition.sample_rate);
    auto speech = filt.apply(g);

    SyntheticUtterance u;
    u.speech = SampleBuffer(std::move(speech), condition.sample_rate);
    u.glottal_derivative = SampleBuffer(std::move(g), condition.sample_rate);
    u.gcis = std::move(gcis);
    u.condition = condition;
    u.period = T0;
    return u;
}

std::int64_t perturbed_gci(std::int64_t true_gci, double gci_error, std::size_t period)
{
    if (!(std::abs(gci_error) <= 0.5 + 1e-12))
        throw std::invalid_argument("GCI error outside [-0.5, 0.5] of T0");
    return true_gci + static_cast<std::int64_t>(std::llround(gci_error * static_cast<double>(period)));
}

std::size_t analysis_gci_index(std::size_t periods)
{
    return periods / 2;
}

} // namespace glottal
