#include "glottal/lf_model.hpp"

#include "glottal/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace glottal {

namespace {

constexpr double box_slack = 1e-9;

bool in_range(double v, double lo, double hi)
{
    return v >= lo - box_slack && v <= hi + box_slack;
}

// Newton on f with bisection fallback; f(lo) and f(hi) must differ in sign.
double safeguarded_newton(const std::function<double(double)>& f,
                          const std::function<double(double)>& df, double lo, double hi,
                          double scale, const char* what)
{
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NumericalFailure(std::string(what) + ": root not bracketed", std::abs(flo));
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (fx == 0.0)
            return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double d = df(x);
        double next = d != 0.0 ? x - fx / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= 1e-12 * std::max(std::abs(x), scale) || hi - lo <= 1e-12 * std::max(std::abs(x), scale))
            return x;
    }
    throw NumericalFailure(std::string(what) + ": no convergence", hi - lo);
}

} // namespace

void validate(const LFParams& p)
{
    if (!in_range(p.open_quotient, 0.4, 0.9))
        throw std::invalid_argument("open quotient outside [0.4, 0.9]");
    if (!in_range(p.asymmetry, 0.6, 0.9))
        throw std::invalid_argument("asymmetry coefficient outside [0.6, 0.9]");
    if (!in_range(p.f0, 60.0, 180.0))
        throw std::invalid_argument("F0 outside [60, 180] Hz");
    if (!(p.return_quotient >= 0.0 && p.return_quotient < 1.0))
        throw std::invalid_argument("return quotient outside [0, 1)");
    if (!(p.excitation > 0.0) || !std::isfinite(p.excitation))
        throw std::invalid_argument("excitation amplitude must be positive");
}

double LFShape::value(std::size_t n) const
{
    const double t = static_cast<double>(n);
    const double te_d = static_cast<double>(te);
    if (n <= te)
        return e0 * std::exp(alpha * t) * std::sin(omega_g * t);
    if (epsilon == 0.0)
        return 0.0;
    const double closed = static_cast<double>(period) - te_d;
    return -(excitation / (epsilon * ta)) * (std::exp(-epsilon * (t - te_d)) - std::exp(-epsilon * closed));
}

LFShape solve_lf(const LFParams& p, std::size_t period_samples)
{
    validate(p);
    LFShape s;
    s.period = period_samples;
    s.excitation = p.excitation;
    s.te = static_cast<std::size_t>(std::llround(p.open_quotient * static_cast<double>(period_samples)));
    if (s.te < 4 || s.te >= period_samples)
        throw std::invalid_argument("period too short for the requested open quotient");
    const double te = static_cast<double>(s.te);
    s.tp = p.asymmetry * te;
    s.omega_g = std::numbers::pi / s.tp;
    const double closed = static_cast<double>(period_samples) - te;
    s.ta = p.return_quotient * closed;

    if (p.return_quotient > 0.0) {
        // u = epsilon * closed solves Qa u = 1 - exp(-u), u > 0
        const double qa = p.return_quotient;
        const auto f = [qa](double u) { return qa * u - 1.0 + std::exp(-u); };
        const auto df = [qa](double u) { return qa - std::exp(-u); };
        const double u = safeguarded_newton(f, df, 1.0 - qa, 1.0 / qa, 1.0, "LF return phase");
        s.epsilon = u / closed;
    }

    // closed-phase contribution does not depend on alpha
    double closed_sum = 0.0;
    for (std::size_t n = s.te + 1; n < period_samples; ++n)
        closed_sum += s.value(n);

    const double ee = p.excitation;
    const double sin_te = std::sin(s.omega_g * te);
    const auto sum = [&](double alpha) {
        double acc = closed_sum;
        for (std::size_t n = 0; n <= s.te; ++n) {
            const double t = static_cast<double>(n);
            acc -= ee * std::exp(alpha * (t - te)) * std::sin(s.omega_g * t) / sin_te;
        }
        return acc;
    };
    const auto dsum = [&](double alpha) {
        double acc = 0.0;
        for (std::size_t n = 0; n <= s.te; ++n) {
            const double t = static_cast<double>(n);
            acc -= ee * (t - te) * std::exp(alpha * (t - te)) * std::sin(s.omega_g * t) / sin_te;
        }
        return acc;
    };

    const double unit = 1.0 / te;
    double hi = unit;
    for (int i = 0; sum(hi) > 0.0; ++i) {
        if (i > 60)
            throw NumericalFailure("LF alpha: no upper bracket", sum(hi));
        hi *= 2.0;
    }
    double lo = -unit;
    for (int i = 0; sum(lo) < 0.0; ++i) {
        if (i > 60)
            throw NumericalFailure("LF alpha: no lower bracket", sum(lo));
        lo *= 2.0;
    }
    s.alpha = safeguarded_newton(sum, dsum, lo, hi, unit, "LF alpha");
    s.e0 = -ee / (std::exp(s.alpha * te) * sin_te);
    return s;
}

std::vector<double> lf_pulse(const LFParams& params, std::size_t period_samples)
{
    const LFShape s = solve_lf(params, period_samples);
    std::vector<double> g(period_samples);
    for (std::size_t n = 0; n < period_samples; ++n)
        g[n] = s.value(n);
    return g;
}

} // namespace glottal
