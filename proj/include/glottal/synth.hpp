#pragma once

#include "glottal/lf_model.hpp"
#include "glottal/signal.hpp"
#include "glottal/vowel_filter.hpp"

#include <cstdint>

namespace glottal {

struct TestCondition {
    LFParams lf;
    Vowel vowel = Vowel::a;
    /// Analysis-instant offset as a fraction of T0, in [-0.5, 0.5].
    double gci_error = 0.0;
    int sample_rate = 16000;
};

/// Throws std::invalid_argument outside the parameter box.
void validate(const TestCondition& condition);

/// round(Fs / F0).
std::size_t period_samples(double f0, int sample_rate);

struct SyntheticUtterance {
    SampleBuffer speech;
    SampleBuffer glottal_derivative;
    GciTrack gcis;
    TestCondition condition;
    std::size_t period = 0;
};

/// `periods` copies of the LF pulse filtered by the vowel filter. GCIs sit at
/// k T0 + te. Throws std::invalid_argument for fewer than 4 periods.
SyntheticUtterance synthesize(const TestCondition& condition, std::size_t periods = 10);

/// true_gci + round(gci_error * period).
std::int64_t perturbed_gci(std::int64_t true_gci, double gci_error, std::size_t period);

/// Index of the GCI used for analysis in an utterance of `periods` periods.
std::size_t analysis_gci_index(std::size_t periods);

} // namespace glottal
