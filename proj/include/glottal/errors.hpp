#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glottal {

// Precondition violations (bad lengths, radii, parameters) are reported with
// std::invalid_argument and std::out_of_range. The types below cover failures
// that callers usually want to tell apart.

/// Input carries no information to analyse (e.g. an all-zero frame).
class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure did not reach its accuracy target.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A chirp radius so extreme that R^{-n} leaves the double range.
class NumericalRange : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Malformed input file. `position` is a byte offset (binary formats) or a
/// 1-based line number (text formats).
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Command-line misuse (bad flags, bad grid syntax).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace glottal
