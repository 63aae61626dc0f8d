#pragma once

#include <cmath>
#include <complex>

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Only the handful of operations compensated Horner evaluation needs.
namespace glottal::detail {

struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    double value() const noexcept { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) noexcept
{
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble quick_two_sum(double a, double b) noexcept
{
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) noexcept
{
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept
{
    DoubleDouble s = two_sum(a.hi, b.hi);
    const DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) noexcept { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) noexcept { return a + (-b); }

inline DoubleDouble operator+(DoubleDouble a, double b) noexcept
{
    DoubleDouble s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator*(DoubleDouble a, double b) noexcept
{
    DoubleDouble p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

/// Complex number with double-double parts.
struct ComplexDD {
    DoubleDouble re;
    DoubleDouble im;

    std::complex<double> value() const noexcept { return {re.value(), im.value()}; }
};

inline ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) noexcept
{
    return {a.re + b.re, a.im + b.im};
}

/// a * z for a double-double a and a plain complex z.
inline ComplexDD operator*(const ComplexDD& a, std::complex<double> z) noexcept
{
    return {a.re * z.real() - a.im * z.imag(), a.re * z.imag() + a.im * z.real()};
}

} // namespace glottal::detail
