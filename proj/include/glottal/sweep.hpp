#pragma once

#include "glottal/czt.hpp"
#include "glottal/metrics.hpp"
#include "glottal/synth.hpp"

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace glottal {

struct Grid {
    std::vector<double> open_quotients;
    std::vector<double> asymmetries;
    std::vector<double> f0s;
    std::vector<Vowel> vowels;
    std::vector<double> gci_errors;

    /// 0.4:0.05:0.9 x 0.6:0.05:0.9 x 60:20:180 x {a,e,i,u} x -0.5:0.05:0.5
    static Grid full();
    /// {0.5,0.65,0.8} x {0.7,0.75,0.8} x {80,120,160} x {a,e} x -0.5:0.1:0.5
    static Grid desk();

    std::size_t size() const noexcept;
};

/// "start:step:stop" (inclusive), a comma list, or a single number.
/// Values are rounded to 1e-9 so that e.g. 0.1 steps land on exact decimals.
/// Throws UsageError on bad syntax.
std::vector<double> parse_range(std::string_view text);

/// Comma-separated strategy names: unit, auto, ideal. Throws UsageError.
std::vector<RadiusMethod> parse_strategies(std::string_view text);
RadiusMethod parse_strategy(std::string_view text);

struct SweepOptions {
    std::size_t periods = 10;
    double return_quotient = 0.1;
    int sample_rate = 16000;
    std::size_t K = default_grid_size;
    bool normalize_sd = true;
    double fg_cap_hz = default_fg_cap_hz;
    /// 0: CHIRP_GLOTTAL_THREADS if set, else the hardware concurrency.
    unsigned threads = 0;
};

/// Worker count: explicit value if nonzero, else CHIRP_GLOTTAL_THREADS, else
/// the hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Scores one decomposition of a synthetic frame against its condition.
MetricsReport score(const Decomposition& d, const TestCondition& condition,
                    std::optional<double> fg_ref, std::span<const double> reference,
                    const SweepOptions& options);

/// For every cell and strategy: synthesize, frame at the perturbed GCI,
/// root once, decompose per strategy, score. Reports reach `sink` in grid
/// order (open quotient, asymmetry, F0, vowel, error, strategy) on the calling
/// thread. Cell failures are recorded in MetricsReport::error.
void run_sweep(const Grid& grid, std::span<const RadiusMethod> strategies,
               const SweepOptions& options, const std::function<void(const MetricsReport&)>& sink);

std::vector<MetricsReport> run_sweep(const Grid& grid, std::span<const RadiusMethod> strategies,
                                     const SweepOptions& options);

struct AggregateRow {
    double gci_error = 0.0;
    RadiusMethod strategy = RadiusMethod::unit;
    std::size_t cells = 0;
    std::size_t failures = 0;
    double determination_rate = 0.0;
    /// Mean over non-failed cells.
    double mean_sd = 0.0;
    /// Percentage of cells with NCC >= 0.9.
    double ncc_rate = 0.0;
};

/// One row per (gci_error, strategy), errors in first-seen order.
std::vector<AggregateRow> aggregate(std::span<const MetricsReport> reports,
                                    std::span<const RadiusMethod> strategies);

} // namespace glottal
