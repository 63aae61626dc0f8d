#include "glottal/errors.hpp"
#include "glottal/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace glottal {

namespace {

constexpr std::uint16_t format_pcm = 1;
constexpr std::uint16_t format_float = 3;
constexpr std::uint16_t format_extensible = 0xFFFE;

std::uint32_t le32(std::span<const std::byte> b, std::size_t at)
{
    return std::to_integer<std::uint32_t>(b[at]) | std::to_integer<std::uint32_t>(b[at + 1]) << 8 |
           std::to_integer<std::uint32_t>(b[at + 2]) << 16 | std::to_integer<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t le16(std::span<const std::byte> b, std::size_t at)
{
    return static_cast<std::uint16_t>(std::to_integer<unsigned>(b[at]) | std::to_integer<unsigned>(b[at + 1]) << 8);
}

bool tag_is(std::span<const std::byte> b, std::size_t at, const char* tag)
{
    return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put16(std::vector<std::byte>& out, std::uint16_t v)
{
    out.push_back(std::byte(v & 0xFF));
    out.push_back(std::byte(v >> 8));
}

void put32(std::vector<std::byte>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(std::byte((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::byte>& out, const char* tag)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(std::byte(tag[i]));
}

} // namespace

SampleBuffer parse_wav(std::span<const std::byte> b, std::vector<std::string>* warnings)
{
    if (b.size() < 12)
        throw FormatError("truncated RIFF header", b.size());
    if (!tag_is(b, 0, "RIFF"))
        throw FormatError("missing RIFF tag", 0);
    if (!tag_is(b, 8, "WAVE"))
        throw FormatError("missing WAVE tag", 8);

    std::size_t pos = 12;
    bool have_fmt = false;
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t rate = 0;
    std::uint16_t bits = 0;
    std::uint16_t block_align = 0;
    std::size_t fmt_pos = 0;
    while (true) {
        if (pos + 8 > b.size()) {
            throw FormatError(have_fmt ? "missing 'data' chunk" : "missing 'fmt ' chunk", pos);
        }
        const std::uint32_t size = le32(b, pos + 4);
        const std::size_t body = pos + 8;
        if (tag_is(b, pos, "fmt ")) {
            if (size < 16 || body + size > b.size())
                throw FormatError("truncated 'fmt ' chunk", pos);
            fmt_pos = pos;
            format = le16(b, body);
            channels = le16(b, body + 2);
            rate = le32(b, body + 4);
            block_align = le16(b, body + 12);
            bits = le16(b, body + 14);
            if (format == format_extensible) {
                if (size < 40)
                    throw FormatError("truncated extensible 'fmt ' chunk", pos);
                format = le16(b, body + 24);
            }
            have_fmt = true;
        } else if (tag_is(b, pos, "data")) {
            if (!have_fmt)
                throw FormatError("'data' chunk before 'fmt ' chunk", pos);
            if (channels == 0 || rate == 0 || rate > static_cast<std::uint32_t>(INT32_MAX))
                throw FormatError("invalid channel count or sample rate", fmt_pos + 10);
            const bool pcm16 = format == format_pcm && bits == 16;
            const bool f32 = format == format_float && bits == 32;
            if (!pcm16 && !f32)
                throw FormatError("unsupported codec (format " + std::to_string(format) + ", " +
                                      std::to_string(bits) + " bits); need PCM16 or float32",
                                  fmt_pos + 8);
            const std::size_t width = bits / 8;
            if (block_align != width * channels)
                throw FormatError("block alignment does not match channels and sample width", fmt_pos + 20);
            if (body + size > b.size())
                throw FormatError("truncated 'data' chunk", b.size());
            const std::size_t frames = size / block_align;
            std::vector<double> x(frames);
            for (std::size_t i = 0; i < frames; ++i) {
                const std::size_t at = body + i * block_align;
                if (pcm16) {
                    x[i] = static_cast<std::int16_t>(le16(b, at)) / 32768.0;
                } else {
                    const float f = std::bit_cast<float>(le32(b, at));
                    if (!std::isfinite(f))
                        throw FormatError("non-finite float sample", at);
                    x[i] = f;
                }
            }
            if (channels > 1 && warnings)
                warnings->push_back(std::to_string(channels) + "-channel file: using channel 0");
            return SampleBuffer(std::move(x), static_cast<int>(rate));
        }
        pos = body + size + (size & 1u);
    }
}

SampleBuffer read_wav(const std::filesystem::path& path, std::vector<std::string>* warnings)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto bytes = std::as_bytes(std::span<const char>(raw));
    try {
        return parse_wav(bytes, warnings);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what() + " (byte " + std::to_string(e.position()) + ")",
                          e.position());
    }
}

std::vector<std::byte> encode_wav(const SampleBuffer& buffer, WavEncoding encoding)
{
    const bool pcm = encoding == WavEncoding::pcm16;
    const std::uint16_t width = pcm ? 2 : 4;
    const auto data_size = static_cast<std::uint32_t>(buffer.size() * width);
    std::vector<std::byte> out;
    out.reserve(44 + data_size);
    put_tag(out, "RIFF");
    put32(out, 36 + data_size);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put32(out, 16);
    put16(out, pcm ? format_pcm : format_float);
    put16(out, 1);
    put32(out, static_cast<std::uint32_t>(buffer.sample_rate()));
    put32(out, static_cast<std::uint32_t>(buffer.sample_rate()) * width);
    put16(out, width);
    put16(out, static_cast<std::uint16_t>(8 * width));
    put_tag(out, "data");
    put32(out, data_size);
    for (const double v : buffer.samples()) {
        if (pcm) {
            const double s = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
            put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(s)));
        } else {
            put32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        }
    }
    return out;
}

void write_wav(const std::filesystem::path& path, const SampleBuffer& buffer, WavEncoding encoding)
{
    const auto bytes = encode_wav(buffer, encoding);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

} // namespace glottal
