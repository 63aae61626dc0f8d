#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace glottal {

enum class Vowel { a, e, i, u };

const char* to_string(Vowel v) noexcept;
/// Accepts "a", "e", "i", "u" (optionally written "/a/"). Throws std::invalid_argument.
Vowel parse_vowel(std::string_view text);

struct Formant {
    double frequency;  ///< Hz
    double bandwidth;  ///< Hz
};

/// Built-in formant table (adult male averages):
///   /a/  730 1090 2440 3400
///   /e/  530 1840 2480 3400
///   /i/  270 2290 3010 3400
///   /u/  300  870 2240 3400
/// with bandwidths 90, 110, 170, 250 Hz for F1..F4.
std::array<Formant, 4> formant_table(Vowel v);

/// Direct-form all-pole filter y(n) = gain x(n) - sum_{k>=1} a[k] y(n-k), a[0] = 1.
struct AllPoleFilter {
    std::vector<double> denominator;
    double gain = 1.0;
    int sample_rate = 16000;

    std::vector<double> apply(std::span<const double> x) const;
    /// Complex response at a frequency in Hz.
    std::complex<double> response(double frequency) const;
};

/// Cascade of four two-pole resonators, each with poles r exp(+-i theta),
/// r = exp(-pi B/Fs), theta = 2 pi F/Fs, normalized to unit gain at DC.
/// Throws std::invalid_argument when a formant is at or above Nyquist.
AllPoleFilter vowel_filter(Vowel v, int sample_rate);

} // namespace glottal
