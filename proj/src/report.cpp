#include "glottal/report.hpp"

#include "glottal/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace glottal {

namespace {

std::string format_double(double v)
{
    if (!std::isfinite(v))
        return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_field(const Field& f)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::string& s) const { return csv_quote(s); }
    };
    return std::visit(Visitor{}, f);
}

nlohmann::ordered_json json_field(const Field& f)
{
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
        nlohmann::ordered_json operator()(double d) const
        {
            if (!std::isfinite(d))
                return nullptr;
            return round_sig9(d);
        }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, f);
}

Field opt(std::optional<double> v)
{
    if (v)
        return *v;
    return std::monostate{};
}

std::string join(const std::vector<std::string>& parts, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

double round_sig9(double v)
{
    if (!std::isfinite(v) || v == 0.0)
        return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

ReportFormat parse_format(std::string_view text)
{
    if (text == "csv")
        return ReportFormat::csv;
    if (text == "json")
        return ReportFormat::json;
    throw UsageError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_table(const Table& table, ReportFormat format)
{
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::invalid_argument("report row width differs from the header");
    }
    if (format == ReportFormat::csv) {
        std::string out;
        std::vector<std::string> header;
        for (const auto& c : table.columns)
            header.push_back(csv_quote(c));
        out += join(header, ",") + "\r\n";
        for (const auto& row : table.rows) {
            std::vector<std::string> cells;
            for (const auto& f : row)
                cells.push_back(csv_field(f));
            out += join(cells, ",") + "\r\n";
        }
        return out;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[table.columns[i]] = json_field(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void write_report(const Table& table, ReportFormat format, const std::filesystem::path& path)
{
    const std::string text = format_table(table, format);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write report " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed for report " + path.string());
}

Table parse_json_table(std::string_view text, const std::vector<std::string>& columns)
{
    const auto doc = nlohmann::ordered_json::parse(text);
    if (!doc.is_array())
        throw FormatError("report is not a JSON array", 0);
    Table t;
    t.columns = columns;
    for (const auto& obj : doc) {
        std::vector<Field> row;
        for (const auto& c : columns) {
            if (!obj.contains(c))
                throw FormatError("record lacks column '" + c + "'", 0);
            const auto& v = obj.at(c);
            if (v.is_null())
                row.emplace_back(std::monostate{});
            else if (v.is_boolean())
                row.emplace_back(v.get<bool>());
            else if (v.is_number_integer())
                row.emplace_back(v.get<std::int64_t>());
            else if (v.is_number())
                row.emplace_back(v.get<double>());
            else if (v.is_string())
                row.emplace_back(v.get<std::string>());
            else
                throw FormatError("column '" + c + "' is not a scalar", 0);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<std::string> cell_columns()
{
    return {"oq", "alpha_m", "f0", "vowel", "gci_error", "strategy", "radius", "gap_width",
            "n_anticausal", "degree", "fg_est", "fg_ref", "fg_rel_error", "determined", "sd",
            "sd_reliable", "ncc", "residual_max", "completeness_error", "warnings", "error"};
}

Table cell_table(std::span<const MetricsReport> reports)
{
    Table t;
    t.columns = cell_columns();
    for (const auto& r : reports) {
        const auto& c = r.condition;
        std::vector<Field> row{c.lf.open_quotient, c.lf.asymmetry, c.lf.f0,
                               std::string(to_string(c.vowel)), c.gci_error,
                               std::string(to_string(r.strategy))};
        if (r.failed()) {
            row.resize(t.columns.size() - 1, std::monostate{});
            row.emplace_back(r.error);
        } else {
            row.insert(row.end(),
                       {r.radius, r.gap_width, static_cast<std::int64_t>(r.n_anticausal),
                        static_cast<std::int64_t>(r.degree), opt(r.fg_est), opt(r.fg_ref),
                        opt(r.fg_rel_error), r.determined, r.spectral_distortion, r.sd_reliable, r.ncc,
                        r.residual_max, r.completeness_error, join(r.warnings, "; "), std::string()});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table aggregate_table(std::span<const AggregateRow> rows)
{
    Table t;
    t.columns = {"gci_error", "strategy", "cells", "failures", "determination_rate", "mean_sd", "ncc_rate"};
    for (const auto& r : rows) {
        t.rows.push_back({r.gci_error, std::string(to_string(r.strategy)),
                          static_cast<std::int64_t>(r.cells), static_cast<std::int64_t>(r.failures),
                          r.determination_rate, r.mean_sd, r.ncc_rate});
    }
    return t;
}

} // namespace glottal
