#pragma once

#include "glottal/metrics.hpp"
#include "glottal/sweep.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace glottal {

/// A report cell. monostate is a missing value (empty in CSV, null in JSON).
using Field = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Field>> rows;

    bool operator==(const Table&) const = default;
};

enum class ReportFormat { csv, json };

ReportFormat parse_format(std::string_view text);

/// CSV: header row then one line per row, RFC 4180 quoting, doubles printed
/// with 9 significant digits. JSON: array of flat objects with keys in column
/// order, doubles rounded to 9 significant digits, non-finite doubles as null.
std::string format_table(const Table& table, ReportFormat format);

/// Throws std::runtime_error naming the path on I/O failure.
void write_report(const Table& table, ReportFormat format, const std::filesystem::path& path);

/// Parses format_table(..., json) output back into a table; `columns` gives
/// the column order (needed for an empty array).
Table parse_json_table(std::string_view text, const std::vector<std::string>& columns);

/// Rounds to 9 significant digits.
double round_sig9(double v);

/// Per-cell sweep columns:
/// oq, alpha_m, f0, vowel, gci_error, strategy, radius, gap_width,
/// n_anticausal, degree, fg_est, fg_ref, fg_rel_error, determined, sd,
/// sd_reliable, ncc, residual_max, completeness_error, warnings, error
Table cell_table(std::span<const MetricsReport> reports);
std::vector<std::string> cell_columns();

/// Aggregate columns: gci_error, strategy, cells, failures,
/// determination_rate, mean_sd, ncc_rate
Table aggregate_table(std::span<const AggregateRow> rows);

} // namespace glottal
