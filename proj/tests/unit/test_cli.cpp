#include "glottal/cli.hpp"
#include "glottal/io.hpp"

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace glottal;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path workdir()
{
    const auto d = fs::temp_directory_path() / "chirpglottal_cli_test";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("usage errors exit with 3")
{
    CHECK(cli({}).code == exit_usage);
    CHECK(cli({"frobnicate"}).code == exit_usage);
    CHECK(cli({"sweep", "--grid", "huge"}).code == exit_usage);
    CHECK(cli({"sweep", "--errors", "0:0:1"}).code == exit_usage);
    CHECK(cli({"sweep", "--strategies", "unit,nope"}).code == exit_usage);
    CHECK(cli({"sweep", "--oq", "0.1"}).code == exit_usage);
    CHECK(cli({"--help"}).code == exit_ok);
}

TEST_CASE("synth then decompose as JSON, one record per GCI")
{
    const auto d = workdir();
    const auto wav = (d / "v.wav").string();
    const auto gci = (d / "v.gci").string();
    REQUIRE(cli({"synth", "--oq", "0.6", "--alpha-m", "0.75", "--f0", "160", "--vowel", "e", "--out", wav,
                 "--gci-out", gci})
                .code == exit_ok);
    const auto r = cli({"decompose", wav, "--gci", gci, "--strategy", "auto", "--format", "json"});
    // the first and last GCIs sit too close to the file edges for a two-period window
    CHECK(r.code == exit_frame_failures);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 10);
    CHECK(doc[5]["strategy"] == "auto");
    CHECK(doc[5]["error"] == "");
    CHECK(doc[0]["error"] != "");
}

TEST_CASE("offset sweep gives 13 records per GCI")
{
    const auto d = workdir();
    const auto wav = (d / "w.wav").string();
    const auto gci = (d / "w.gci").string();
    REQUIRE(cli({"synth", "--f0", "180", "--periods", "8", "--out", wav}).code == exit_ok);
    {
        std::ofstream g(gci);
        g << "300\n389\n478\n";
    }
    const auto r = cli({"decompose", wav, "--gci", gci, "--offset-sweep", "-0.3:0.05:0.3", "--strategy", "unit"});
    CHECK(r.code == exit_ok);
    std::size_t lines = 0;
    for (const char c : r.out)
        lines += c == '\n';
    CHECK(lines == 1 + 3 * 13);
}

TEST_CASE("ideal and unit agree at offset 0 on ground-truth GCIs")
{
    const auto d = workdir();
    const auto wav = (d / "x.wav").string();
    const auto gci = (d / "x.gci").string();
    REQUIRE(cli({"synth", "--f0", "120", "--oq", "0.7", "--out", wav, "--gci-out", gci}).code == exit_ok);
    const auto u = nlohmann::json::parse(cli({"decompose", wav, "--gci", gci, "--strategy", "unit", "--format", "json"}).out);
    const auto i = nlohmann::json::parse(cli({"decompose", wav, "--gci", gci, "--strategy", "ideal", "--format", "json"}).out);
    REQUIRE(u.size() == i.size());
    for (std::size_t k = 1; k + 1 < u.size(); ++k) {
        CHECK(i[k]["radius"] == 1.0);
        CHECK(u[k]["n_anticausal"] == i[k]["n_anticausal"]);
        CHECK(u[k]["fg_est"] == i[k]["fg_est"]);
    }
}

TEST_CASE("sweep writes cells and aggregate files deterministically")
{
    const auto d = workdir();
    const std::vector<std::string> base{"sweep", "--oq", "0.65", "--alpha-m", "0.75", "--f0", "160", "--vowels", "a",
                                        "--errors", "-0.2:0.2:0.2", "--strategies", "unit,auto,ideal"};
    auto a1 = base;
    a1.insert(a1.end(), {"--out", (d / "s1").string(), "--threads", "1"});
    auto a2 = base;
    a2.insert(a2.end(), {"--out", (d / "s2").string(), "--threads", "3"});
    REQUIRE(cli(a1).code == exit_ok);
    REQUIRE(cli(a2).code == exit_ok);
    CHECK(slurp(d / "s1_cells.csv") == slurp(d / "s2_cells.csv"));
    CHECK(slurp(d / "s1_aggregate.csv") == slurp(d / "s2_aggregate.csv"));
    const auto agg = slurp(d / "s1_aggregate.csv");
    std::size_t lines = 0;
    for (const char c : agg)
        lines += c == '\n';
    CHECK(lines == 1 + 3 * 3);
    CHECK(agg.find("0,unit,1,0,") != std::string::npos);
}

TEST_CASE("decompose with an EGG track")
{
    const auto d = workdir();
    const auto wav = (d / "e.wav").string();
    const auto egg = (d / "e_egg.wav").string();
    REQUIRE(cli({"synth", "--f0", "100", "--out", wav}).code == exit_ok);
    std::vector<double> contact(1600, 0.5);
    for (std::size_t c = 96; c < contact.size(); c += 160)
        for (std::size_t i = c; i < c + 60 && i < contact.size(); ++i)
            contact[i] = -0.5;
    write_wav(egg, SampleBuffer(contact, 16000));
    const auto r = cli({"decompose", wav, "--egg", egg});
    CHECK(r.code != exit_usage);
    CHECK(r.out.find("gci_index") == 0);
}

TEST_CASE("bad GCI file is a format error")
{
    const auto d = workdir();
    const auto wav = (d / "b.wav").string();
    const auto gci = (d / "b.gci").string();
    REQUIRE(cli({"synth", "--out", wav}).code == exit_ok);
    {
        std::ofstream g(gci);
        g << "500\n400\n";
    }
    const auto r = cli({"decompose", wav, "--gci", gci});
    CHECK(r.code == exit_usage);
    CHECK(r.err.find("line 2") != std::string::npos);
}
