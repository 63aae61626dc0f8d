#include "glottal/cli.hpp"

#include "glottal/czt.hpp"
#include "glottal/errors.hpp"
#include "glottal/io.hpp"
#include "glottal/metrics.hpp"
#include "glottal/report.hpp"
#include "glottal/sweep.hpp"
#include "glottal/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace glottal {

namespace {

namespace fs = std::filesystem;

struct DecomposeArgs {
    std::string wav;
    std::string gci;
    std::string egg;
    std::int64_t egg_delay = 0;
    double egg_threshold = 0.3;
    std::string strategy = "auto";
    std::size_t K = default_grid_size;
    std::string format = "csv";
    std::string out;
    std::string offsets;
    std::string export_dir;
    double fg_cap = default_fg_cap_hz;
    unsigned threads = 0;
};

struct SweepArgs {
    std::string grid = "desk";
    std::string oq, am, f0, vowels, errors;
    std::string strategies = "unit,auto,ideal";
    std::string format = "csv";
    std::string out;
    SweepOptions options;
    bool no_normalize = false;
};

struct SynthArgs {
    double oq = 0.6;
    double am = 0.7;
    double f0 = 100.0;
    std::string vowel = "a";
    int fs = 16000;
    std::size_t periods = 10;
    double qa = 0.1;
    std::string out;
    std::string gci_out;
    std::string glottal_out;
};

struct FrameRecord {
    std::size_t gci_index = 0;
    double gci = 0.0;
    double offset = 0.0;
    std::int64_t instant = 0;
    double period = 0.0;
    std::optional<Decomposition> d;
    std::optional<double> fg;
    std::string error;
};

void write_or_print(const Table& t, ReportFormat f, const std::string& path, std::ostream& out)
{
    if (path.empty())
        out << format_table(t, f);
    else
        write_report(t, f, path);
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
    const unsigned workers = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        });
}

double local_period(const GciTrack& track, std::size_t i)
{
    const auto& g = track.instants;
    if (i == 0)
        return g[1] - g[0];
    if (i + 1 == g.size())
        return g[i] - g[i - 1];
    return 0.5 * (g[i + 1] - g[i - 1]);
}

int run_decompose(const DecomposeArgs& a, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> warnings;
    const SampleBuffer speech = read_wav(a.wav, &warnings);
    for (const auto& w : warnings)
        err << "warning: " << a.wav << ": " << w << '\n';

    GciTrack track;
    if (!a.gci.empty()) {
        track = read_gci_file(a.gci, speech.sample_rate());
    } else {
        warnings.clear();
        const SampleBuffer egg = read_wav(a.egg, &warnings);
        for (const auto& w : warnings)
            err << "warning: " << a.egg << ": " << w << '\n';
        if (egg.sample_rate() != speech.sample_rate())
            throw UsageError("EGG and speech sample rates differ");
        track = gcis_from_diff_egg(difference_egg(egg, a.egg_delay), a.egg_threshold);
    }
    try {
        validate_track(track, speech.size());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("GCI track: ") + e.what(), 0);
    }
    if (track.size() < 2)
        throw UsageError("need at least two GCIs to estimate the local period");

    const RadiusMethod method = parse_strategy(a.strategy);
    const auto offsets = a.offsets.empty() ? std::vector<double>{0.0} : parse_range(a.offsets);
    const ReportFormat format = parse_format(a.format);
    if (a.K < 4)
        throw UsageError("--K must be at least 4");

    std::vector<FrameRecord> records;
    for (std::size_t i = 0; i < track.size(); ++i) {
        for (const double off : offsets) {
            FrameRecord r;
            r.gci_index = i;
            r.gci = track.instants[i];
            r.offset = off;
            r.period = local_period(track, i);
            r.instant = std::llround(r.gci + off * r.period);
            records.push_back(std::move(r));
        }
    }

    parallel_for(records.size(), a.threads, [&](std::size_t k) {
        auto& r = records[k];
        try {
            const Frame frame = extract_frame(speech, static_cast<double>(r.instant), r.period);
            const double L = static_cast<double>(frame.window_length);
            const double t_star = clamp_gci_offset(r.gci - static_cast<double>(frame.anchor), L);
            r.d = decompose(frame, Strategy{method, t_star}, a.K);
            r.fg = glottal_formant_frequency(r.d->anticausal_spectrum, speech.sample_rate(),
                                             speech.sample_rate() / r.period, a.fg_cap);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    if (!a.export_dir.empty())
        fs::create_directories(a.export_dir);

    Table t;
    t.columns = {"gci_index", "gci", "offset", "instant", "period", "strategy", "radius",
                 "n_anticausal", "degree", "fg_est", "gap_width", "residual_max",
                 "completeness_error", "warnings", "error"};
    bool failures = false;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        std::vector<Field> row{static_cast<std::int64_t>(r.gci_index), r.gci, r.offset, r.instant,
                               r.period, std::string(to_string(method))};
        if (!r.error.empty()) {
            failures = true;
            err << "frame at GCI " << r.gci << " (offset " << r.offset << "): " << r.error << '\n';
            row.resize(t.columns.size() - 1, std::monostate{});
            row.emplace_back(r.error);
        } else {
            const auto& d = *r.d;
            std::string warn;
            for (const auto& w : d.warnings)
                warn += (warn.empty() ? "" : "; ") + w;
            row.insert(row.end(), {d.radius(), static_cast<std::int64_t>(d.n_anticausal),
                                   static_cast<std::int64_t>(d.n_anticausal + d.n_causal),
                                   r.fg ? Field(*r.fg) : Field(std::monostate{}), d.contour.gap_width,
                                   d.residual_max, d.completeness_error, warn, std::string()});
            if (!a.export_dir.empty()) {
                const std::string stem = "frame" + std::to_string(r.gci_index) + "_" + std::to_string(k);
                const auto open = d.open_phase();
                write_wav(fs::path(a.export_dir) / (stem + "_anticausal.wav"),
                          SampleBuffer({open.begin(), open.end()}, speech.sample_rate()), WavEncoding::float32);
                const std::size_t n = std::min(d.causal_wave.size(), static_cast<std::size_t>(2 * std::llround(r.period)));
                write_wav(fs::path(a.export_dir) / (stem + "_causal.wav"),
                          SampleBuffer({d.causal_wave.begin(), d.causal_wave.begin() + static_cast<std::ptrdiff_t>(n)},
                                       speech.sample_rate()),
                          WavEncoding::float32);
            }
        }
        t.rows.push_back(std::move(row));
    }
    write_or_print(t, format, a.out, out);
    return failures ? exit_frame_failures : exit_ok;
}

int run_sweep_cmd(SweepArgs a, std::ostream& out, std::ostream& err)
{
    Grid grid;
    if (a.grid == "desk")
        grid = Grid::desk();
    else if (a.grid == "full")
        grid = Grid::full();
    else
        throw UsageError("unknown grid '" + a.grid + "' (expected desk or full)");
    if (!a.oq.empty())
        grid.open_quotients = parse_range(a.oq);
    if (!a.am.empty())
        grid.asymmetries = parse_range(a.am);
    if (!a.f0.empty())
        grid.f0s = parse_range(a.f0);
    if (!a.errors.empty())
        grid.gci_errors = parse_range(a.errors);
    if (!a.vowels.empty()) {
        grid.vowels.clear();
        std::stringstream ss(a.vowels);
        for (std::string v; std::getline(ss, v, ',');) {
            try {
                grid.vowels.push_back(parse_vowel(v));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
    }
    // reject out-of-box grids up front rather than failing every cell
    for (const double v : grid.open_quotients)
        if (v < 0.4 - 1e-9 || v > 0.9 + 1e-9)
            throw UsageError("open quotient " + std::to_string(v) + " outside [0.4, 0.9]");
    for (const double v : grid.asymmetries)
        if (v < 0.6 - 1e-9 || v > 0.9 + 1e-9)
            throw UsageError("asymmetry " + std::to_string(v) + " outside [0.6, 0.9]");
    for (const double v : grid.f0s)
        if (v < 60.0 - 1e-9 || v > 180.0 + 1e-9)
            throw UsageError("F0 " + std::to_string(v) + " outside [60, 180]");
    for (const double v : grid.gci_errors)
        if (std::abs(v) > 0.5 + 1e-12)
            throw UsageError("GCI error " + std::to_string(v) + " outside [-0.5, 0.5]");
    if (a.options.periods < 5)
        throw UsageError("--periods must be at least 5");

    const auto strategies = parse_strategies(a.strategies);
    const ReportFormat format = parse_format(a.format);
    a.options.normalize_sd = !a.no_normalize;

    const auto reports = run_sweep(grid, strategies, a.options);
    const auto rows = aggregate(reports, strategies);
    const bool failures = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.failed(); });
    for (const auto& r : reports) {
        if (r.failed())
            err << "cell oq=" << r.condition.lf.open_quotient << " am=" << r.condition.lf.asymmetry
                << " f0=" << r.condition.lf.f0 << " vowel=" << to_string(r.condition.vowel)
                << " error=" << r.condition.gci_error << " " << to_string(r.strategy) << ": " << r.error << '\n';
    }

    const std::string ext = format == ReportFormat::csv ? ".csv" : ".json";
    if (a.out.empty()) {
        out << format_table(aggregate_table(rows), format);
    } else {
        write_report(cell_table(reports), format, a.out + "_cells" + ext);
        write_report(aggregate_table(rows), format, a.out + "_aggregate" + ext);
    }
    return failures ? exit_frame_failures : exit_ok;
}

int run_synth(const SynthArgs& a, std::ostream& out)
{
    TestCondition c;
    c.lf.open_quotient = a.oq;
    c.lf.asymmetry = a.am;
    c.lf.f0 = a.f0;
    c.lf.return_quotient = a.qa;
    c.sample_rate = a.fs;
    try {
        c.vowel = parse_vowel(a.vowel);
        validate(c);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto u = synthesize(c, a.periods);

    const auto scaled = [](const SampleBuffer& b) {
        double peak = 0.0;
        for (const double v : b.samples())
            peak = std::max(peak, std::abs(v));
        std::vector<double> x(b.samples().begin(), b.samples().end());
        if (peak > 0.0)
            for (double& v : x)
                v *= 0.5 / peak;
        return SampleBuffer(std::move(x), b.sample_rate());
    };
    write_wav(a.out, scaled(u.speech));
    if (!a.gci_out.empty())
        write_gci_file(a.gci_out, u.gcis);
    if (!a.glottal_out.empty())
        write_wav(a.glottal_out, scaled(u.glottal_derivative));
    out << "wrote " << u.speech.size() << " samples, T0 = " << u.period << ", " << u.gcis.size()
        << " GCIs\n";
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Glottal source estimation by zeros of the chirp z-transform", "chirp-glottal"};
    app.require_subcommand(1);

    DecomposeArgs da;
    auto* dec = app.add_subcommand("decompose", "Decompose speech frames around each GCI");
    dec->add_option("wav", da.wav, "Speech WAV file")->required()->check(CLI::ExistingFile);
    auto* gci_opt = dec->add_option("--gci", da.gci, "GCI file (samples or seconds)")->check(CLI::ExistingFile);
    auto* egg_opt = dec->add_option("--egg", da.egg, "EGG WAV file; GCIs from its differenced peaks")->check(CLI::ExistingFile);
    gci_opt->excludes(egg_opt);
    dec->add_option("--egg-delay", da.egg_delay, "Delay compensation applied to the differenced EGG, samples");
    dec->add_option("--egg-threshold", da.egg_threshold, "Peak threshold relative to the strongest dEGG peak")
        ->check(CLI::Range(1e-6, 1.0));
    dec->add_option("--strategy", da.strategy, "unit, auto or ideal")->check(CLI::IsMember({"unit", "auto", "ideal"}));
    dec->add_option("--K", da.K, "Spectrum grid size");
    dec->add_option("--format", da.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    dec->add_option("--out", da.out, "Report path (stdout when omitted)");
    dec->add_option("--offset-sweep", da.offsets, "Window offsets start:step:stop in fractions of T0");
    dec->add_option("--export-waves", da.export_dir, "Directory for per-frame component WAVs");
    dec->add_option("--fg-cap", da.fg_cap, "Upper limit of the glottal formant search, Hz")->check(CLI::PositiveNumber);
    dec->add_option("--threads", da.threads, "Worker threads (default: CHIRP_GLOTTAL_THREADS or all cores)");

    SweepArgs sa;
    auto* sw = app.add_subcommand("sweep", "Run the synthetic test grid");
    sw->add_option("--grid", sa.grid, "desk or full")->check(CLI::IsMember({"desk", "full"}));
    sw->add_option("--oq", sa.oq, "Open quotients, start:step:stop or list");
    sw->add_option("--alpha-m", sa.am, "Asymmetry coefficients");
    sw->add_option("--f0", sa.f0, "Pitch values, Hz");
    sw->add_option("--vowels", sa.vowels, "Comma list of a, e, i, u");
    sw->add_option("--errors", sa.errors, "GCI errors as fractions of T0");
    sw->add_option("--strategies", sa.strategies, "Comma list of unit, auto, ideal");
    sw->add_option("--format", sa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sw->add_option("--out", sa.out, "Output prefix: writes PREFIX_cells and PREFIX_aggregate");
    sw->add_option("--fs", sa.options.sample_rate, "Sample rate, Hz")->check(CLI::Range(8000, 192000));
    sw->add_option("--periods", sa.options.periods, "Periods per utterance");
    sw->add_option("--qa", sa.options.return_quotient, "Return-phase quotient")->check(CLI::Range(0.0, 0.99));
    sw->add_option("--K", sa.options.K, "Spectrum grid size");
    sw->add_option("--fg-cap", sa.options.fg_cap_hz, "Upper limit of the glottal formant search, Hz")
        ->check(CLI::PositiveNumber);
    sw->add_flag("--no-sd-normalize", sa.no_normalize, "Keep the gain difference in the spectral distortion");
    sw->add_option("--threads", sa.options.threads, "Worker threads");

    SynthArgs ya;
    auto* sy = app.add_subcommand("synth", "Write a synthetic vowel and its GCIs");
    sy->add_option("--oq", ya.oq, "Open quotient");
    sy->add_option("--alpha-m", ya.am, "Asymmetry coefficient");
    sy->add_option("--f0", ya.f0, "Pitch, Hz");
    sy->add_option("--vowel", ya.vowel, "a, e, i or u");
    sy->add_option("--fs", ya.fs, "Sample rate, Hz")->check(CLI::Range(8000, 192000));
    sy->add_option("--periods", ya.periods, "Number of periods")->check(CLI::Range(4, 100000));
    sy->add_option("--qa", ya.qa, "Return-phase quotient")->check(CLI::Range(0.0, 0.99));
    sy->add_option("--out", ya.out, "Speech WAV path")->required();
    sy->add_option("--gci-out", ya.gci_out, "GCI file path");
    sy->add_option("--glottal-out", ya.glottal_out, "Glottal flow derivative WAV path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (dec->parsed()) {
            if (da.gci.empty() && da.egg.empty())
                throw UsageError("decompose needs --gci or --egg");
            return run_decompose(da, out, err);
        }
        if (sw->parsed())
            return run_sweep_cmd(sa, out, err);
        return run_synth(ya, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace glottal
