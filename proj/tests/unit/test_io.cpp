#include "glottal/errors.hpp"
#include "glottal/io.hpp"
#include "glottal/report.hpp"

#include <doctest.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

using namespace glottal;

namespace {

void put(std::vector<std::byte>& b, const char* tag)
{
    for (int i = 0; i < 4; ++i)
        b.push_back(std::byte(tag[i]));
}

void put16(std::vector<std::byte>& b, std::uint16_t v)
{
    b.push_back(std::byte(v & 0xFF));
    b.push_back(std::byte(v >> 8));
}

void put32(std::vector<std::byte>& b, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        b.push_back(std::byte((v >> (8 * i)) & 0xFF));
}

// Hand-built RIFF file; `extensible` wraps the format tag.
std::vector<std::byte> wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint16_t bits,
                                 const std::vector<std::byte>& data, bool extensible = false)
{
    std::vector<std::byte> b;
    put(b, "RIFF");
    put32(b, 0);
    put(b, "WAVE");
    put(b, "LIST");
    put32(b, 3);
    put(b, "abc"); // three bytes plus the pad byte
    put(b, "fmt ");
    put32(b, extensible ? 40 : 16);
    put16(b, extensible ? 0xFFFE : format);
    put16(b, channels);
    put32(b, 16000);
    put32(b, 16000u * channels * bits / 8);
    put16(b, static_cast<std::uint16_t>(channels * bits / 8));
    put16(b, bits);
    if (extensible) {
        put16(b, 22);
        put16(b, bits);
        put32(b, 0);
        put16(b, format);
        for (int i = 0; i < 14; ++i)
            b.push_back(std::byte(0));
    }
    put(b, "data");
    put32(b, static_cast<std::uint32_t>(data.size()));
    b.insert(b.end(), data.begin(), data.end());
    return b;
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("chirpglottal_test_" + name);
}

} // namespace

TEST_CASE("PCM16 scaling")
{
    std::vector<std::byte> d;
    for (const std::int16_t v : {16384, -32768, 0, 32767})
        put16(d, static_cast<std::uint16_t>(v));
    const auto buf = parse_wav(wav_bytes(1, 1, 16, d));
    REQUIRE(buf.size() == 4);
    CHECK(buf[0] == 0.5);
    CHECK(buf[1] == -1.0);
    CHECK(buf[2] == 0.0);
    CHECK(buf[3] == 32767.0 / 32768.0);
    CHECK(buf.sample_rate() == 16000);
}

TEST_CASE("float32 and extensible headers")
{
    std::vector<std::byte> d;
    for (const float f : {0.25f, -0.75f})
        put32(d, std::bit_cast<std::uint32_t>(f));
    auto buf = parse_wav(wav_bytes(3, 1, 32, d));
    CHECK(buf[0] == 0.25);
    CHECK(buf[1] == -0.75);
    buf = parse_wav(wav_bytes(3, 1, 32, d, true));
    CHECK(buf[1] == -0.75);
}

TEST_CASE("stereo keeps channel 0 and warns")
{
    std::vector<std::byte> d;
    for (const std::int16_t v : {100, -200, 300, -400})
        put16(d, static_cast<std::uint16_t>(v));
    std::vector<std::string> warnings;
    const auto buf = parse_wav(wav_bytes(1, 2, 16, d), &warnings);
    REQUIRE(buf.size() == 2);
    CHECK(buf[0] == 100.0 / 32768.0);
    CHECK(buf[1] == 300.0 / 32768.0);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("channel 0") != std::string::npos);
}

TEST_CASE("malformed WAV input")
{
    std::vector<std::byte> d(8, std::byte(0));
    auto good = wav_bytes(1, 1, 16, d);

    auto truncated = good;
    truncated.resize(truncated.size() - 4);
    try {
        parse_wav(truncated);
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("data") != std::string::npos);
    }

    auto no_data = good;
    no_data.resize(no_data.size() - 16);
    try {
        parse_wav(no_data);
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("'data'") != std::string::npos);
        CHECK(e.position() == no_data.size());
    }

    auto bad_tag = good;
    std::memcpy(bad_tag.data(), "RIFX", 4);
    CHECK_THROWS_AS(parse_wav(bad_tag), FormatError);

    CHECK_THROWS_AS(parse_wav(wav_bytes(1, 1, 24, std::vector<std::byte>(9))), FormatError);
    CHECK_THROWS_AS(parse_wav(wav_bytes(6, 1, 8, d)), FormatError);
    CHECK_THROWS_AS(parse_wav(std::vector<std::byte>(5)), FormatError);
}

TEST_CASE("WAV write and read back")
{
    const SampleBuffer buf({0.0, 0.5, -0.5, 0.999}, 22050);
    const auto path = temp_path("rt.wav");
    write_wav(path, buf);
    const auto back = read_wav(path);
    CHECK(back.sample_rate() == 22050);
    CHECK(back[1] == 0.5);
    CHECK(back[2] == -0.5);
    write_wav(path, buf, WavEncoding::float32);
    CHECK(read_wav(path)[3] == static_cast<double>(0.999f));
    std::filesystem::remove(path);
}

TEST_CASE("GCI text in samples and seconds")
{
    auto t = parse_gci_text("100\n260\n420", 16000);
    CHECK(t.instants == std::vector<double>{100, 260, 420});
    t = parse_gci_text("0.010\n0.020\n", 16000);
    REQUIRE(t.size() == 2);
    CHECK(t.instants[0] == doctest::Approx(160.0).epsilon(1e-12));
    CHECK(t.instants[1] == doctest::Approx(320.0).epsilon(1e-12));
    t = parse_gci_text("# header\n\n 5 \r\n9\n", 16000);
    CHECK(t.instants == std::vector<double>{5, 9});
}

TEST_CASE("GCI text errors carry the line number")
{
    try {
        parse_gci_text("200\n100", 16000);
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(e.position() == 2);
    }
    try {
        parse_gci_text("1\n2\nx3", 16000);
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(e.position() == 3);
    }
}

TEST_CASE("GCI file round trip")
{
    const auto path = temp_path("g.txt");
    write_gci_file(path, {{10, 20, 35}, GciSource::synthetic_ground_truth});
    CHECK(read_gci_file(path, 16000).instants == std::vector<double>{10, 20, 35});
    std::filesystem::remove(path);
}

TEST_CASE("empty CSV report is header only")
{
    Table t;
    t.columns = {"a", "b"};
    CHECK(format_table(t, ReportFormat::csv) == "a,b\r\n");
    CHECK(format_table(t, ReportFormat::json) == "[]\n");
}

TEST_CASE("CSV quoting and number format")
{
    Table t;
    t.columns = {"x", "s", "n", "b", "m"};
    t.rows.push_back({1.0 / 3.0, std::string("a,\"b\""), std::int64_t{42}, true, std::monostate{}});
    t.rows.push_back({std::nan(""), std::string("plain"), std::int64_t{-1}, false, 1e-20});
    CHECK(format_table(t, ReportFormat::csv) ==
          "x,s,n,b,m\r\n0.333333333,\"a,\"\"b\"\"\",42,true,\r\n,plain,-1,false,1e-20\r\n");
}

TEST_CASE("JSON round trip")
{
    Table t;
    t.columns = {"x", "s", "n", "b", "m"};
    t.rows.push_back({round_sig9(1.0 / 3.0), std::string("q\"uote"), std::int64_t{42}, true, std::monostate{}});
    t.rows.push_back({80.0, std::string(""), std::int64_t{0}, false, round_sig9(123456.789012)});
    const std::string text = format_table(t, ReportFormat::json);
    const Table back = parse_json_table(text, t.columns);
    CHECK(back == t);
    CHECK(format_table(back, ReportFormat::json) == text);
    CHECK(text.find("0.333333333") != std::string::npos);
}

TEST_CASE("report rows must match the header")
{
    Table t;
    t.columns = {"a"};
    t.rows.push_back({1.0, 2.0});
    CHECK_THROWS_AS(format_table(t, ReportFormat::csv), std::invalid_argument);
    CHECK_THROWS_AS(write_report(Table{{"a"}, {}}, ReportFormat::csv, "/nonexistent-dir/x.csv"), std::runtime_error);
}
