#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cli/errors.hpp"
#include "cli/io.hpp"
#include "cli/manifest.hpp"
#include "qspacing/ensembles.hpp"
#include "qspacing/experiment.hpp"
#include "qspacing/fitting.hpp"
#include "qspacing/spectral.hpp"
#include "qspacing/surmise.hpp"

namespace qspacing::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<double> kDefaultGrid{0.0, 0.002, 0.005, 0.01, 0.015, 0.02, 0.03, 0.05, 0.1, 0.2, 0.5, 1.0};

// Fraction of spacings counted as "near zero" in the Berry-Tabor report.
constexpr double kSmallSpacing = 0.25;

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += format_double(values[i]);
    }
    return s;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw DataError("cannot write " + path.string());
    return f;
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
}

// Flags shared by the subcommands that unfold spectra.
struct UnfoldFlags {
    int degree = 7;
    double trim = 0.05;
    double bins = 0.1;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--degree", degree, "unfolding polynomial degree")->capture_default_str()->check(CLI::Range(1, 30));
        cmd.add_option("--trim", trim, "fraction of levels dropped at each spectrum edge")
            ->capture_default_str()
            ->check(CLI::Range(0.0, 0.49));
        add_bins(cmd);
    }
    void add_bins(CLI::App& cmd) {
        cmd.add_option("--bins", bins, "histogram bin width")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    }
    void record(RunManifest& m, bool with_unfold = true) const {
        if (with_unfold) {
            m.params["--degree"] = std::to_string(degree);
            m.params["--trim"] = format_double(trim);
        }
        m.params["--bins"] = format_double(bins);
    }
    [[nodiscard]] UnfoldOptions options() const { return UnfoldOptions{degree, trim}; }
};

struct SurmiseArgs {
    int beta = 1;
    double q = 0.0;
    double smax = 3.0;
    double step = 0.01;
    std::string out;
};

struct OracleArgs {
    int beta = 1;
    double q = 0.5;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    double scale = 1.0;
    std::string out = ".";
};

struct BerryTaborArgs {
    double alpha = 0.70710678118654752;
    std::size_t count = 10000;
    UnfoldFlags unfold;
    std::string out = ".";
};

struct TransitionArgs {
    int beta = 1;
    std::vector<double> g = kDefaultGrid;
    std::size_t dim = 200;
    std::size_t members = 20;
    double alpha = 0.70710678118654752;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;
    std::string method = "ls";
    std::string normalization = "raw";
    unsigned threads = 1;
    UnfoldFlags unfold;
    std::string out = ".";
};

struct FitArgs {
    std::string input;
    int beta = 1;
    std::string method = "ls";
    UnfoldFlags unfold;
    std::string out;
};

struct ReplayArgs {
    std::string manifest;
    std::string out = ".";
    unsigned threads = 1;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int cmd_surmise(const SurmiseArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    const SpacingLaw law{SymmetryClass(a.beta), EntropicIndex(a.q)};
    RunManifest m;
    m.subcommand = "surmise";
    m.params = {{"--beta", std::to_string(a.beta)},
                {"--q", format_double(a.q)},
                {"--smax", format_double(a.smax)},
                {"--step", format_double(a.step)}};
    if (a.q == 1.0) m.notes.push_back("q=1 tabulates the Wigner surmise");

    if (a.out.empty()) {
        m.write_header(out);
        write_law_table(out, law, a.smax, a.step);
        return kExitOk;
    }
    make_dir(a.out);
    auto f = open_output(fs::path(a.out) / "surmise.csv");
    m.write_header(f);
    write_law_table(f, law, a.smax, a.step);
    m.duration_seconds = seconds_since(start);
    m.write_json(fs::path(a.out) / "manifest.json");
    return kExitOk;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    if (a.q >= 1.0) throw UsageError("oracle requires q < 1");
    if (a.samples == 0) throw UsageError("--samples must be positive");
    if (!(a.scale > 0.0)) throw UsageError("--scale must be positive");
    const SymmetryClass cls(a.beta);
    const EntropicIndex q(a.q);

    const auto spacings = sample_tsallis_2x2(OracleConfig{cls, q, a.scale, a.samples, a.seed});
    const double ks = ks_distance(spacings, SpacingLaw{cls, q});

    RunManifest m;
    m.subcommand = "oracle";
    m.seed = a.seed;
    m.params = {{"--beta", std::to_string(a.beta)},
                {"--q", format_double(a.q)},
                {"--samples", std::to_string(a.samples)},
                {"--seed", std::to_string(a.seed)},
                {"--scale", format_double(a.scale)}};
    m.notes.push_back("spacings rescaled to unit mean");

    make_dir(a.out);
    auto f = open_output(fs::path(a.out) / "oracle_spacings.txt");
    m.write_header(f);
    write_values(f, spacings.values());
    m.duration_seconds = seconds_since(start);
    m.write_json(fs::path(a.out) / "manifest.json");

    out << "samples," << spacings.size() << '\n' << "ks," << format_double(ks) << '\n';
    return kExitOk;
}

int cmd_berry_tabor(const BerryTaborArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    if (a.count < 100) throw UsageError("--count must be at least 100");

    const OscillatorConfig cfg{a.alpha, a.count, 1.0};
    const auto spacings = oscillator_spacings(cfg, a.unfold.options());
    const auto hist = histogram(spacings, a.unfold.bins);
    const SpacingLaw reference{SymmetryClass(1), EntropicIndex(0.0)};
    const double ks = ks_distance(spacings, reference);
    const double peak = histogram_peak(hist);
    const auto small = std::count_if(spacings.values().begin(), spacings.values().end(),
                                     [](double s) { return s < kSmallSpacing; });
    const double small_fraction = static_cast<double>(small) / static_cast<double>(spacings.size());

    RunManifest m;
    m.subcommand = "berry-tabor";
    m.params = {{"--alpha", format_double(a.alpha)}, {"--count", std::to_string(a.count)}};
    a.unfold.record(m);
    m.notes.push_back("overlay is the orthogonal-class law at q=0");
    if (spacings.clipped_fraction() > kClipWarningFraction) {
        m.notes.push_back("warning: clipped fraction " + format_double(spacings.clipped_fraction()));
    }

    make_dir(a.out);
    const fs::path dir(a.out);
    {
        auto f = open_output(dir / "berry_tabor_hist.csv");
        m.write_header(f);
        write_histogram(f, hist);
    }
    {
        auto f = open_output(dir / "berry_tabor_overlay.csv");
        m.write_header(f);
        write_law_table(f, reference, hist.bin_edges.back(), 0.01);
    }
    {
        auto f = open_output(dir / "berry_tabor_spacings.txt");
        m.write_header(f);
        write_values(f, spacings.values());
    }
    std::ostringstream report;
    report << "metric,value\n"
           << "spacings," << spacings.size() << '\n'
           << "peak," << format_double(peak) << '\n'
           << "fraction_below_0.25," << format_double(small_fraction) << '\n'
           << "ks_vs_q0," << format_double(ks) << '\n';
    {
        auto f = open_output(dir / "berry_tabor_report.csv");
        m.write_header(f);
        f << report.str();
    }
    m.duration_seconds = seconds_since(start);
    m.write_json(dir / "manifest.json");
    out << report.str();
    return kExitOk;
}

int cmd_transition(const TransitionArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    if (a.beta != 1 && a.beta != 2) throw UsageError("transition supports --beta 1 or 2");
    if (a.g.empty()) throw UsageError("--g needs at least one value");
    for (double g : a.g) {
        if (!(g >= 0.0 && g <= 1.0)) throw UsageError("every --g value must lie in [0, 1]");
    }
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    if (!(a.sigma2 > 0.0)) throw UsageError("--sigma2 must be positive");
    if (a.members == 0) throw UsageError("--members must be positive");
    FitMethod method;
    MixNormalization normalization;
    try {
        method = parse_fit_method(a.method);
        normalization = parse_normalization(a.normalization);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    MixConfig cfg;
    cfg.base = OscillatorConfig{a.alpha, a.dim, 1.0};
    cfg.perturbation = GaussianEnsembleConfig{SymmetryClass(a.beta), a.dim, a.sigma2, a.seed};
    cfg.members = a.members;
    cfg.normalization = normalization;

    RunManifest m;
    m.subcommand = "transition";
    m.seed = a.seed;
    m.normalization = std::string(to_string(normalization));
    m.params = {{"--beta", std::to_string(a.beta)},
                {"--g", join(a.g)},
                {"--dim", std::to_string(a.dim)},
                {"--members", std::to_string(a.members)},
                {"--alpha", format_double(a.alpha)},
                {"--sigma2", format_double(a.sigma2)},
                {"--seed", std::to_string(a.seed)},
                {"--method", std::string(to_string(method))},
                {"--normalization", std::string(to_string(normalization))}};
    a.unfold.record(m);
    m.notes.push_back("spacings pooled over members after per-member unfolding");
    m.notes.push_back(a.beta == 1 ? "orthogonal draws: Var(H_ij)=sigma2 off-diagonal, 2 sigma2 diagonal"
                                  : "unitary draws: Re and Im of H_ij each sigma2/2, diagonal sigma2");
    m.notes.push_back("member k uses the same perturbation stream at every g");

    make_dir(a.out);
    const fs::path dir(a.out);
    auto table = open_output(dir / "transition.csv");
    m.write_header(table);
    table << "g,q_hat,objective,at_boundary\n" << std::flush;

    std::vector<std::string> warnings;
    for (double g : a.g) {
        cfg.g = g;
        const auto point = transition_point(cfg, a.unfold.options(), a.unfold.bins, method, a.threads);
        RunManifest hist_manifest = m;
        hist_manifest.params["--g"] = format_double(g);
        if (point.spacings.clipped_fraction() > kClipWarningFraction) {
            std::string w = "warning: g=" + format_double(g) + " clipped fraction " +
                            format_double(point.spacings.clipped_fraction());
            hist_manifest.notes.push_back(w);
            warnings.push_back(w);
            err << w << '\n';
        }
        {
            auto f = open_output(dir / ("hist_g" + format_double(g) + ".csv"));
            hist_manifest.write_header(f);
            write_histogram(f, point.hist);
        }
        table << format_double(g) << ',' << format_double(point.fit.q_hat) << ','
              << format_double(point.fit.objective) << ',' << (point.fit.at_boundary ? 1 : 0) << '\n'
              << std::flush;
        out << "g=" << format_double(g) << " q_hat=" << format_double(point.fit.q_hat) << '\n';
    }
    m.notes.insert(m.notes.end(), warnings.begin(), warnings.end());
    m.duration_seconds = seconds_since(start);
    m.write_json(dir / "manifest.json");
    return kExitOk;
}

int cmd_fit(const FitArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    FitMethod method;
    try {
        method = parse_fit_method(a.method);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const SymmetryClass cls(a.beta);

    auto raw = read_values(fs::path(a.input));
    if (raw.size() < 2) throw DataError(a.input + ": need at least 2 spacings, got " + std::to_string(raw.size()));
    const auto spacings = UnfoldedSpacings::normalize(std::move(raw));
    const FitResult r =
        method == FitMethod::HistLS ? fit_q_ls(histogram(spacings, a.unfold.bins), cls) : fit_q_mle(spacings, cls);

    RunManifest m;
    m.subcommand = "fit";
    m.params = {{"--input", a.input}, {"--beta", std::to_string(a.beta)}, {"--method", std::string(to_string(method))}};
    a.unfold.record(m, false);
    m.notes.push_back("input rescaled to unit mean before fitting");

    if (a.out.empty()) {
        out << kFitCsvHeader << '\n' << to_csv_row(r) << '\n';
        return kExitOk;
    }
    make_dir(a.out);
    auto f = open_output(fs::path(a.out) / "fit.csv");
    m.write_header(f);
    f << kFitCsvHeader << '\n' << to_csv_row(r) << '\n';
    m.duration_seconds = seconds_since(start);
    m.write_json(fs::path(a.out) / "manifest.json");
    out << kFitCsvHeader << '\n' << to_csv_row(r) << '\n';
    return kExitOk;
}

// Runs `body`, turning exceptions into exit codes. Invalid-argument errors thrown
// while interpreting flags are usage errors; everything later is a data error.
int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spacing statistics of Tsallis random-matrix ensembles", "qspacing"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    const auto beta_check = CLI::IsMember({1, 2, 4});
    const auto unit_interval = CLI::Range(0.0, 1.0);

    SurmiseArgs sa;
    auto* surmise = app.add_subcommand("surmise", "tabulate s, pdf, cdf of the spacing law");
    surmise->add_option("--beta", sa.beta, "symmetry class (1, 2 or 4)")->capture_default_str()->check(beta_check);
    surmise->add_option("--q", sa.q, "entropic index in [0, 1]; 1 selects the Wigner surmise")
        ->capture_default_str()
        ->check(unit_interval);
    surmise->add_option("--smax", sa.smax, "last grid point")->capture_default_str()->check(CLI::NonNegativeNumber);
    surmise->add_option("--step", sa.step, "grid step")->capture_default_str()->check(CLI::PositiveNumber);
    surmise->add_option("--out", sa.out, "output directory (default: stdout)");

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "sample the 2x2 ensemble and compare with the analytic law");
    oracle->add_option("--beta", oa.beta, "symmetry class (1, 2 or 4)")->capture_default_str()->check(beta_check);
    oracle->add_option("--q", oa.q, "entropic index in [0, 1)")->capture_default_str()->check(unit_interval);
    oracle->add_option("-n,--samples", oa.samples, "number of accepted samples")->capture_default_str();
    oracle->add_option("--seed", oa.seed, "root seed")->capture_default_str();
    oracle->add_option("--scale", oa.scale, "ellipse scale of the joint density")->capture_default_str();
    oracle->add_option("--out", oa.out, "output directory")->capture_default_str();

    BerryTaborArgs ba;
    auto* berry = app.add_subcommand("berry-tabor", "spacing histogram of the two-dimensional oscillator");
    berry->add_option("--alpha", ba.alpha, "frequency ratio in (0, 1)")->capture_default_str();
    berry->add_option("--count", ba.count, "number of levels")->capture_default_str();
    ba.unfold.add_to(*berry);
    berry->add_option("--out", ba.out, "output directory")->capture_default_str();

    TransitionArgs ta;
    auto* transition = app.add_subcommand("transition", "fit q along the oscillator-to-random-matrix crossover");
    transition->add_option("--beta", ta.beta, "symmetry class of the perturbation (1 or 2)")
        ->capture_default_str()
        ->check(CLI::IsMember({1, 2}));
    transition->add_option("--g", ta.g, "comma-separated coupling values in [0, 1]")
        ->delimiter(',')
        ->capture_default_str();
    transition->add_option("--dim", ta.dim, "matrix dimension")->capture_default_str();
    transition->add_option("--members", ta.members, "matrices per g")->capture_default_str();
    transition->add_option("--alpha", ta.alpha, "oscillator frequency ratio in (0, 1)")->capture_default_str();
    transition->add_option("--sigma2", ta.sigma2, "perturbation variance scale")->capture_default_str();
    transition->add_option("--seed", ta.seed, "root seed")->capture_default_str();
    transition->add_option("--method", ta.method, "estimator: ls or mle")->capture_default_str();
    transition->add_option("--normalization", ta.normalization, "raw or unit-mean")
        ->capture_default_str()
        ->check(CLI::IsMember({"raw", "unit-mean"}));
    transition->add_option("--threads", ta.threads, "worker threads (does not change results)")
        ->capture_default_str()
        ->check(CLI::Range(1u, 256u));
    ta.unfold.add_to(*transition);
    transition->add_option("--out", ta.out, "output directory")->capture_default_str();

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "fit q to a file of spacings (one per line)");
    fit->add_option("input,--input", fa.input, "spacings file")->required();
    fit->add_option("--beta", fa.beta, "symmetry class (1, 2 or 4)")->capture_default_str()->check(beta_check);
    fit->add_option("--method", fa.method, "estimator: ls or mle")->capture_default_str();
    fa.unfold.add_bins(*fit);
    fit->add_option("--out", fa.out, "output directory (default: stdout only)");

    ReplayArgs ra;
    auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest.json");
    replay->add_option("--manifest", ra.manifest, "manifest file")->required();
    replay->add_option("--out", ra.out, "output directory")->capture_default_str();
    replay->add_option("--threads", ra.threads, "worker threads for transition runs")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (surmise->parsed()) return guarded([&] { return cmd_surmise(sa, out); }, err);
    if (oracle->parsed()) return guarded([&] { return cmd_oracle(oa, out); }, err);
    if (berry->parsed()) return guarded([&] { return cmd_berry_tabor(ba, out); }, err);
    if (transition->parsed()) return guarded([&] { return cmd_transition(ta, out, err); }, err);
    if (fit->parsed()) return guarded([&] { return cmd_fit(fa, out); }, err);
    return guarded(
        [&] {
            const auto manifest = RunManifest::read_json(ra.manifest);
            auto replay_args = manifest.replay_args();
            replay_args.push_back("--out");
            replay_args.push_back(ra.out);
            if (manifest.subcommand == "transition") {
                replay_args.push_back("--threads");
                replay_args.push_back(std::to_string(ra.threads));
            }
            return run_cli(replay_args, out, err);
        },
        err);
}

}  // namespace qspacing::cli
