#include "glottal/vowel_filter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace glottal {

const char* to_string(Vowel v) noexcept
{
    switch (v) {
    case Vowel::a: return "a";
    case Vowel::e: return "e";
    case Vowel::i: return "i";
    case Vowel::u: return "u";
    }
    return "?";
}

Vowel parse_vowel(std::string_view text)
{
    if (text.size() == 3 && text.front() == '/' && text.back() == '/')
        text = text.substr(1, 1);
    if (text == "a")
        return Vowel::a;
    if (text == "e")
        return Vowel::e;
    if (text == "i")
        return Vowel::i;
    if (text == "u")
        return Vowel::u;
    throw std::invalid_argument("unknown vowel '" + std::string(text) + "'");
}

std::array<Formant, 4> formant_table(Vowel v)
{
    constexpr std::array<double, 4> bw{90.0, 110.0, 170.0, 250.0};
    std::array<double, 4> f{};
    switch (v) {
    case Vowel::a: f = {730.0, 1090.0, 2440.0, 3400.0}; break;
    case Vowel::e: f = {530.0, 1840.0, 2480.0, 3400.0}; break;
    case Vowel::i: f = {270.0, 2290.0, 3010.0, 3400.0}; break;
    case Vowel::u: f = {300.0, 870.0, 2240.0, 3400.0}; break;
    }
    std::array<Formant, 4> out{};
    for (std::size_t k = 0; k < 4; ++k)
        out[k] = {f[k], bw[k]};
    return out;
}

std::vector<double> AllPoleFilter::apply(std::span<const double> x) const
{
    std::vector<double> y(x.size());
    const std::size_t order = denominator.size() - 1;
    for (std::size_t n = 0; n < x.size(); ++n) {
        double acc = gain * x[n];
        for (std::size_t k = 1; k <= order && k <= n; ++k)
            acc -= denominator[k] * y[n - k];
        y[n] = acc;
    }
    return y;
}

std::complex<double> AllPoleFilter::response(double frequency) const
{
    const double w = 2.0 * std::numbers::pi * frequency / static_cast<double>(sample_rate);
    std::complex<double> den{};
    for (std::size_t k = 0; k < denominator.size(); ++k)
        den += denominator[k] * std::polar(1.0, -w * static_cast<double>(k));
    return gain / den;
}

AllPoleFilter vowel_filter(Vowel v, int sample_rate)
{
    if (sample_rate <= 0)
        throw std::invalid_argument("sample rate must be positive");
    const double fs = static_cast<double>(sample_rate);
    AllPoleFilter filt;
    filt.sample_rate = sample_rate;
    filt.denominator = {1.0};
    filt.gain = 1.0;
    for (const auto& f : formant_table(v)) {
        if (!(f.frequency < 0.5 * fs))
            throw std::invalid_argument("formant at " + std::to_string(f.frequency) +
                                        " Hz is not below Nyquist");
        const double r = std::exp(-std::numbers::pi * f.bandwidth / fs);
        const double theta = 2.0 * std::numbers::pi * f.frequency / fs;
        const double a1 = -2.0 * r * std::cos(theta);
        const double a2 = r * r;
        std::vector<double> next(filt.denominator.size() + 2, 0.0);
        for (std::size_t k = 0; k < filt.denominator.size(); ++k) {
            next[k] += filt.denominator[k];
            next[k + 1] += a1 * filt.denominator[k];
            next[k + 2] += a2 * filt.denominator[k];
        }
        filt.denominator = std::move(next);
        filt.gain *= 1.0 + a1 + a2;
    }
    return filt;
}

} // namespace glottal
