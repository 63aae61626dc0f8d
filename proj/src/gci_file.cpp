#include "glottal/errors.hpp"
#include "glottal/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace glottal {

GciTrack parse_gci_text(std::string_view text, int sample_rate)
{
    if (sample_rate <= 0)
        throw std::invalid_argument("sample rate must be positive");
    GciTrack track;
    track.source = GciSource::marker_file;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty() || line.front() == '#') {
            if (end == text.size())
                break;
            continue;
        }
        const bool seconds = line.find_first_of(".eE") != std::string_view::npos;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc() || ptr != line.data() + line.size() || !std::isfinite(v) || v < 0.0)
            throw FormatError("line " + std::to_string(line_no) + ": not a non-negative number: '" +
                                  std::string(line) + "'",
                              line_no);
        const double sample = seconds ? v * sample_rate : v;
        if (!track.instants.empty() && !(sample > track.instants.back()))
            throw FormatError("line " + std::to_string(line_no) + ": GCI not strictly increasing", line_no);
        track.instants.push_back(sample);
        if (end == text.size())
            break;
    }
    return track;
}

GciTrack read_gci_file(const std::filesystem::path& path, int sample_rate)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_gci_text(ss.str(), sample_rate);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what(), e.position());
    }
}

void write_gci_file(const std::filesystem::path& path, const GciTrack& track)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    for (const double t : track.instants)
        out << std::llround(t) << '\n';
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

} // namespace glottal
