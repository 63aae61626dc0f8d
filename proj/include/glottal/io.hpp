#pragma once

#include "glottal/signal.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glottal {

/// Reads a RIFF/WAVE file: PCM 16-bit integer or 32-bit IEEE float
/// (WAVE_FORMAT_EXTENSIBLE accepted), little-endian. Integer samples are
/// divided by 32768. Multichannel input keeps channel 0 and appends a note to
/// `warnings` when given. Throws FormatError with the byte offset of the
/// problem.
SampleBuffer read_wav(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);
SampleBuffer parse_wav(std::span<const std::byte> bytes, std::vector<std::string>* warnings = nullptr);

enum class WavEncoding { pcm16, float32 };

/// Writes a mono file. PCM samples are clipped to [-1, 32767/32768].
void write_wav(const std::filesystem::path& path, const SampleBuffer& buffer,
               WavEncoding encoding = WavEncoding::pcm16);
std::vector<std::byte> encode_wav(const SampleBuffer& buffer, WavEncoding encoding = WavEncoding::pcm16);

/// One instant per line; a line containing '.' (or an exponent) is seconds,
/// otherwise integer samples. Blank lines and lines starting with '#' are
/// skipped. Throws FormatError carrying the 1-based line number on bad or
/// non-increasing values.
GciTrack read_gci_file(const std::filesystem::path& path, int sample_rate);
GciTrack parse_gci_text(std::string_view text, int sample_rate);

/// Writes instants as integer samples (rounded), one per line.
void write_gci_file(const std::filesystem::path& path, const GciTrack& track);

} // namespace glottal
