#include "glottal/sweep.hpp"

#include "glottal/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace glottal {

namespace {

std::vector<double> steps(double start, double step, double stop)
{
    std::vector<double> v;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i)
        v.push_back(std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9);
    return v;
}

double parse_number(std::string_view s, std::string_view whole)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw UsageError("bad number '" + std::string(s) + "' in '" + std::string(whole) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        parts.push_back(s.substr(pos, next == std::string_view::npos ? next : next - pos));
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return parts;
}

} // namespace

Grid Grid::full()
{
    return {steps(0.4, 0.05, 0.9), steps(0.6, 0.05, 0.9), steps(60, 20, 180),
            {Vowel::a, Vowel::e, Vowel::i, Vowel::u}, steps(-0.5, 0.05, 0.5)};
}

Grid Grid::desk()
{
    return {{0.5, 0.65, 0.8}, {0.7, 0.75, 0.8}, {80, 120, 160}, {Vowel::a, Vowel::e},
            steps(-0.5, 0.1, 0.5)};
}

std::size_t Grid::size() const noexcept
{
    return open_quotients.size() * asymmetries.size() * f0s.size() * vowels.size() * gci_errors.size();
}

std::vector<double> parse_range(std::string_view text)
{
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw UsageError("range '" + std::string(text) + "' is not start:step:stop");
        const double start = parse_number(parts[0], text);
        const double step = parse_number(parts[1], text);
        const double stop = parse_number(parts[2], text);
        if (!(step > 0.0) || stop < start)
            throw UsageError("range '" + std::string(text) + "' needs step > 0 and stop >= start");
        if ((stop - start) / step > 1e6)
            throw UsageError("range '" + std::string(text) + "' has too many points");
        return steps(start, step, stop);
    }
    std::vector<double> v;
    for (const auto part : split(text, ','))
        v.push_back(parse_number(part, text));
    return v;
}

RadiusMethod parse_strategy(std::string_view text)
{
    if (text == "unit")
        return RadiusMethod::unit;
    if (text == "auto")
        return RadiusMethod::automatic;
    if (text == "ideal")
        return RadiusMethod::ideal;
    throw UsageError("unknown strategy '" + std::string(text) + "' (expected unit, auto or ideal)");
}

std::vector<RadiusMethod> parse_strategies(std::string_view text)
{
    std::vector<RadiusMethod> out;
    for (const auto part : split(text, ','))
        out.push_back(parse_strategy(part));
    return out;
}

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("CHIRP_GLOTTAL_THREADS")) {
        unsigned v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0)
            return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

MetricsReport score(const Decomposition& d, const TestCondition& condition,
                    std::optional<double> fg_ref, std::span<const double> reference,
                    const SweepOptions& options)
{
    MetricsReport r;
    r.condition = condition;
    r.strategy = d.contour.method;
    r.radius = d.radius();
    r.gap_width = d.contour.gap_width;
    r.n_anticausal = d.n_anticausal;
    r.degree = d.n_anticausal + d.n_causal;
    r.residual_max = d.residual_max;
    r.completeness_error = d.completeness_error;
    r.warnings = d.warnings;
    r.fg_ref = fg_ref;
    r.fg_est = glottal_formant_frequency(d.anticausal_spectrum, condition.sample_rate,
                                         condition.lf.f0, options.fg_cap_hz);
    if (r.fg_est && r.fg_ref && *r.fg_ref > 0.0)
        r.fg_rel_error = std::abs(*r.fg_est - *r.fg_ref) / *r.fg_ref;
    r.determined = is_determined(r.fg_rel_error);
    const auto wave = d.open_phase();
    const auto sd = spectral_distortion(reference, wave, options.K, options.normalize_sd);
    r.spectral_distortion = sd.value;
    r.sd_reliable = sd.reliable;
    r.ncc = normalized_cross_correlation(wave, reference);
    return r;
}

namespace {

std::vector<MetricsReport> run_group(const Grid& grid, std::size_t group,
                                     std::span<const RadiusMethod> strategies,
                                     const SweepOptions& options)
{
    const std::size_t nv = grid.vowels.size();
    const std::size_t nf = grid.f0s.size();
    const std::size_t na = grid.asymmetries.size();
    TestCondition base;
    base.vowel = grid.vowels[group % nv];
    base.lf.f0 = grid.f0s[(group / nv) % nf];
    base.lf.asymmetry = grid.asymmetries[(group / (nv * nf)) % na];
    base.lf.open_quotient = grid.open_quotients[group / (nv * nf * na)];
    base.lf.return_quotient = options.return_quotient;
    base.sample_rate = options.sample_rate;

    std::vector<MetricsReport> out;
    out.reserve(grid.gci_errors.size() * strategies.size());
    const auto fail_all = [&](const TestCondition& c, const std::string& what) {
        for (const auto s : strategies) {
            MetricsReport r;
            r.condition = c;
            r.strategy = s;
            r.error = what;
            out.push_back(std::move(r));
        }
    };

    std::optional<SyntheticUtterance> utt;
    std::vector<double> reference;
    std::optional<double> fg_ref;
    std::string setup_error;
    try {
        utt = synthesize(base, options.periods);
        reference = reference_open_phase(base);
        fg_ref = reference_fg(base, options.K, options.fg_cap_hz);
    } catch (const std::exception& e) {
        setup_error = e.what();
    }

    for (const double err : grid.gci_errors) {
        TestCondition c = base;
        c.gci_error = err;
        if (!setup_error.empty()) {
            fail_all(c, setup_error);
            continue;
        }
        try {
            validate(c);
            const std::size_t T0 = utt->period;
            const auto gci = static_cast<std::int64_t>(utt->gcis.instants[analysis_gci_index(options.periods)]);
            const std::int64_t at = perturbed_gci(gci, err, T0);
            const Frame frame = extract_frame(utt->speech, static_cast<double>(at), static_cast<double>(T0));
            const RootSet roots = find_roots(frame);
            const double t_star = static_cast<double>(gci - frame.anchor);
            for (const auto s : strategies) {
                MetricsReport r;
                try {
                    const Strategy strat{s, t_star};
                    const auto d = decompose(frame, roots, strat, options.K);
                    r = score(d, c, fg_ref, reference, options);
                } catch (const std::exception& e) {
                    r = MetricsReport{};
                    r.condition = c;
                    r.strategy = s;
                    r.error = e.what();
                }
                out.push_back(std::move(r));
            }
        } catch (const std::exception& e) {
            fail_all(c, e.what());
        }
    }
    return out;
}

} // namespace

void run_sweep(const Grid& grid, std::span<const RadiusMethod> strategies,
               const SweepOptions& options, const std::function<void(const MetricsReport&)>& sink)
{
    if (options.periods < 5)
        throw std::invalid_argument("sweeps need at least 5 periods per utterance");
    const std::size_t groups = grid.size() / std::max<std::size_t>(1, grid.gci_errors.size());
    if (grid.size() == 0 || strategies.empty())
        return;
    const unsigned workers = std::min<unsigned>(resolve_threads(options.threads),
                                                static_cast<unsigned>(groups));

    if (workers <= 1) {
        for (std::size_t g = 0; g < groups; ++g) {
            for (const auto& r : run_group(grid, g, strategies, options))
                sink(r);
        }
        return;
    }

    std::vector<std::optional<std::vector<MetricsReport>>> slots(groups);
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t g = next++; g < groups; g = next++) {
                auto reports = run_group(grid, g, strategies, options);
                {
                    const std::lock_guard lock(mutex);
                    slots[g] = std::move(reports);
                }
                ready.notify_all();
            }
        });
    }
    for (std::size_t g = 0; g < groups; ++g) {
        std::vector<MetricsReport> reports;
        {
            std::unique_lock lock(mutex);
            ready.wait(lock, [&] { return slots[g].has_value(); });
            reports = std::move(*slots[g]);
            slots[g].reset();
        }
        for (const auto& r : reports)
            sink(r);
    }
}

std::vector<MetricsReport> run_sweep(const Grid& grid, std::span<const RadiusMethod> strategies,
                                     const SweepOptions& options)
{
    std::vector<MetricsReport> out;
    out.reserve(grid.size() * strategies.size());
    run_sweep(grid, strategies, options, [&](const MetricsReport& r) { out.push_back(r); });
    return out;
}

std::vector<AggregateRow> aggregate(std::span<const MetricsReport> reports,
                                    std::span<const RadiusMethod> strategies)
{
    std::vector<double> errors;
    for (const auto& r : reports) {
        if (std::find(errors.begin(), errors.end(), r.condition.gci_error) == errors.end())
            errors.push_back(r.condition.gci_error);
    }
    std::vector<AggregateRow> rows;
    for (const double e : errors) {
        for (const auto s : strategies) {
            AggregateRow row;
            row.gci_error = e;
            row.strategy = s;
            std::size_t determined = 0;
            std::size_t good_ncc = 0;
            double sd_sum = 0.0;
            for (const auto& r : reports) {
                if (r.condition.gci_error != e || r.strategy != s)
                    continue;
                ++row.cells;
                if (r.failed()) {
                    ++row.failures;
                    continue;
                }
                determined += r.determined ? 1 : 0;
                good_ncc += r.ncc >= 0.9 ? 1 : 0;
                sd_sum += r.spectral_distortion;
            }
            if (row.cells > 0) {
                row.determination_rate = 100.0 * static_cast<double>(determined) / static_cast<double>(row.cells);
                row.ncc_rate = 100.0 * static_cast<double>(good_ncc) / static_cast<double>(row.cells);
            }
            const std::size_t ok = row.cells - row.failures;
            row.mean_sd = ok > 0 ? sd_sum / static_cast<double>(ok) : std::nan("");
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace glottal
