#include "glottal/polyroots.hpp"

#include "glottal/detail/ddouble.hpp"
#include "glottal/detail/fft.hpp"
#include "glottal/errors.hpp"
#include "glottal/radius.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace glottal {

namespace {

using cplx = std::complex<double>;

// Parlett-Reinsch diagonal balancing, radix 2 so scaling is exact.
void balance(Eigen::MatrixXd& a)
{
    const Eigen::Index n = a.rows();
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    for (int sweep = 0; !done && sweep < 100; ++sweep) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0)
                continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

// Newton ratio p(z)/p'(z). For |z| > 1 the reversed polynomial in w = 1/z is
// used: p/p' = z q(w) / (d q(w) - w q'(w)).
template <bool Compensated>
cplx newton_ratio(std::span<const double> a, cplx z)
{
    const std::size_t d = a.size() - 1;
    const bool outside = std::abs(z) > 1.0;
    const cplx x = outside ? 1.0 / z : z;

    cplx b;
    cplx db;
    if constexpr (Compensated) {
        detail::ComplexDD bb{{outside ? a[d] : a[0], 0.0}, {}};
        detail::ComplexDD dbb{};
        for (std::size_t i = 1; i <= d; ++i) {
            const double coef = outside ? a[d - i] : a[i];
            dbb = dbb * x + bb;
            bb = bb * x;
            bb.re = bb.re + coef;
        }
        b = bb.value();
        db = dbb.value();
    } else {
        b = outside ? a[d] : a[0];
        db = 0.0;
        for (std::size_t i = 1; i <= d; ++i) {
            const double coef = outside ? a[d - i] : a[i];
            db = db * x + b;
            b = b * x + coef;
        }
    }
    if (b == cplx{})
        return {};
    if (outside)
        return z * b / (static_cast<double>(d) * b - x * db);
    return b / db;
}

std::vector<double> selection_radii(std::size_t window_length)
{
    const auto bounds = selection_bounds(static_cast<double>(window_length));
    return {bounds.lo, bounds.hi};
}

} // namespace

std::vector<cplx> companion_roots(std::span<const double> coefficients)
{
    if (coefficients.empty() || coefficients[0] == 0.0)
        throw std::invalid_argument("leading coefficient must be nonzero");
    const std::size_t d = coefficients.size() - 1;
    if (d == 0)
        return {};
    if (d == 1)
        return {cplx(-coefficients[1] / coefficients[0], 0.0)};

    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        c(0, j) = -coefficients[static_cast<std::size_t>(j) + 1] / coefficients[0];
    for (Eigen::Index i = 1; i < n; ++i)
        c(i, i - 1) = 1.0;
    balance(c);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("companion eigenvalue iteration did not converge",
                               std::numeric_limits<double>::infinity());
    const auto& ev = solver.eigenvalues();
    std::vector<cplx> roots(d);
    for (std::size_t i = 0; i < d; ++i)
        roots[i] = ev(static_cast<Eigen::Index>(i));
    return roots;
}

std::vector<cplx> refine_roots(std::span<const double> coefficients, std::vector<cplx> z,
                               const RefineOptions& options)
{
    if (coefficients.empty() || coefficients[0] == 0.0)
        throw std::invalid_argument("leading coefficient must be nonzero");
    const std::size_t d = coefficients.size() - 1;
    if (z.size() != d)
        throw std::invalid_argument("need exactly one initial estimate per root");
    if (d == 0)
        return z;
    if (coefficients[d] == 0.0)
        throw std::invalid_argument("constant coefficient must be nonzero; strip zero roots first");

    // coincident starting points stall the Aberth sums
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (z[i] == z[j]) {
                const double m = std::max(std::abs(z[i]), 1e-3);
                z[i] += std::polar(1e-9 * m, 0.7 + static_cast<double>(i));
            }
        }
    }

    std::vector<bool> converged(d, false);
    std::vector<double> last(d, std::numeric_limits<double>::infinity());
    const auto sweep = [&](bool compensated) {
        for (int it = 0; it < options.max_iterations; ++it) {
            bool all = true;
            for (std::size_t i = 0; i < d; ++i) {
                if (converged[i])
                    continue;
                const cplx ratio = compensated ? newton_ratio<true>(coefficients, z[i])
                                               : newton_ratio<false>(coefficients, z[i]);
                cplx step{};
                if (ratio != cplx{}) {
                    cplx sum{};
                    for (std::size_t j = 0; j < d; ++j) {
                        if (j != i)
                            sum += 1.0 / (z[i] - z[j]);
                    }
                    step = ratio / (1.0 - ratio * sum);
                }
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                    throw NumericalFailure("root refinement produced a non-finite iterate",
                                           std::numeric_limits<double>::infinity());
                z[i] -= step;
                last[i] = std::abs(step);
                if (last[i] <= options.tolerance * std::abs(z[i]))
                    converged[i] = true;
                else
                    all = false;
            }
            if (all)
                return true;
        }
        return false;
    };

    const bool compensated = d > options.compensated_above;
    // double Horner stalls on ill-conditioned clusters; retry those in double-double
    if (!sweep(compensated) && !compensated) {
        std::fill(converged.begin(), converged.end(), false);
        sweep(true);
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!converged[i] && last[i] > 1e-4 * std::max(std::abs(z[i]), 1e-3))
            throw NumericalFailure("root refinement did not converge", last[i]);
    }
    return z;
}

double verify_roots(std::span<const double> samples, const RootSet& set, std::span<const double> radii)
{
    constexpr std::size_t K = 1024;
    const std::size_t N = samples.size();
    if (N == 0)
        throw std::invalid_argument("empty coefficient sequence");
    double worst = 0.0;
    for (const double r : radii) {
        if (!(r > 0.0))
            throw std::invalid_argument("verification radius must be positive");
        const double log_r = std::log(r);
        std::vector<cplx> folded(K);
        for (std::size_t n = 0; n < N; ++n)
            folded[n % K] += samples[n] * std::exp(-static_cast<double>(n) * log_r);
        const auto p = detail::dft(folded);
        const auto q = detail::evaluate_factored(set.roots, set.gain, N - 1, r, K);
        double peak = 0.0;
        double err = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            peak = std::max(peak, std::abs(p[k]));
            err = std::max(err, std::abs(p[k] - q[k]));
        }
        if (peak == 0.0)
            return std::numeric_limits<double>::infinity();
        worst = std::max(worst, err / peak);
    }
    return worst;
}

double verify_roots(const Frame& frame, const RootSet& roots)
{
    const auto radii = selection_radii(frame.window_length ? frame.window_length : frame.size());
    return verify_roots(frame.samples, roots, radii);
}

RootSet find_roots(std::span<const double> samples, std::span<const double> radii)
{
    const auto first = std::find_if(samples.begin(), samples.end(), [](double v) { return v != 0.0; });
    if (first == samples.end())
        throw DegenerateInput("frame is identically zero");
    for (const double v : samples) {
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite sample in frame");
    }
    const auto last = std::find_if(samples.rbegin(), samples.rend(), [](double v) { return v != 0.0; });
    const auto begin = static_cast<std::size_t>(first - samples.begin());
    const auto end = samples.size() - static_cast<std::size_t>(last - samples.rbegin());

    RootSet set;
    set.gain = samples[begin];
    set.delay = begin;
    set.length = samples.size();

    std::vector<double> coef(samples.begin() + static_cast<std::ptrdiff_t>(begin),
                             samples.begin() + static_cast<std::ptrdiff_t>(end));
    double scale = 0.0;
    for (const double v : coef)
        scale = std::max(scale, std::abs(v));
    for (double& v : coef)
        v /= scale;

    if (coef.size() > 1)
        set.roots = refine_roots(coef, companion_roots(coef));
    set.roots.resize(set.roots.size() + (samples.size() - end), cplx{});

    set.residual_max = verify_roots(samples, set, radii);
    if (!(set.residual_max <= 1e-6))
        throw NumericalFailure("root verification residual " + std::to_string(set.residual_max) +
                                   " exceeds 1e-6",
                               set.residual_max);
    return set;
}

RootSet find_roots(const Frame& frame)
{
    const auto radii = selection_radii(frame.window_length ? frame.window_length : frame.size());
    return find_roots(frame.samples, radii);
}

} // namespace glottal
