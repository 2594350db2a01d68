// Command-line front end.  Every run, including failed ones, leaves a JSON
// manifest next to its artifacts (or ./zladder-manifest.json when no output
// stem is given) so a directory of results is self-describing.
//
// Exit codes: 0 clean, 2 configuration, 3 numerical tolerance (including
// any degraded quadrature entry), 4 cache or IO trouble.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zladder/harness.hpp"
#include "zladder/hardy.hpp"
#include "zladder/jacobi.hpp"
#include "zladder/ladder.hpp"
#include "zladder/reports.hpp"
#include "zladder/runconfig.hpp"
#include "zladder/special.hpp"

namespace fs = std::filesystem;
using namespace zladder;

namespace {

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot read " + path.string());
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Window ladder cache.  A cached table whose coverage no longer satisfies
// the window request (different margin defaults, older build) is rebuilt
// and overwritten rather than trusted.
LadderTable obtain_window_table(double T, const RunConfig& cfg,
                                std::vector<std::string>& artifacts) {
    if (cfg.cache_dir.empty()) {
        return build_window_table(T);
    }
    const fs::path path = fs::path(cfg.cache_dir) / ("window_T" + compact_double(T) + ".zlt");
    if (fs::exists(path)) {
        LadderTable table = LadderTable::load(path);
        if (table.phi_lo() <= T - 1.0 && table.phi_hi() >= T + 3.0) {
            return table;
        }
    }
    LadderTable table = build_window_table(T);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);  // save() reports real failures
    table.save(path);
    artifacts.push_back(path.string());
    return table;
}

// JSON payload to <stem>.json + CSV mirror to <stem>.csv, or the JSON to
// stdout when no output stem is configured.
void emit_payload(const RunConfig& cfg, const ordered_json& payload, const std::string& csv,
                  RunManifest& man) {
    if (cfg.output.empty()) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    const std::string json_path = cfg.output + ".json";
    const std::string csv_path = cfg.output + ".csv";
    write_text_file(json_path, payload.dump(2) + "\n");
    write_text_file(csv_path, csv);
    man.artifacts.push_back(json_path);
    man.artifacts.push_back(csv_path);
    std::cout << "wrote " << json_path << "\n";
    std::cout << "wrote " << csv_path << "\n";
}

int run_zeta_eval(const RunConfig& cfg, int count, RunManifest& man) {
    Timer timer;
    if (count > 0) {
        if (!(cfg.range_lo > 0.0) || !(cfg.range_hi > cfg.range_lo)) {
            throw ConfigError("range: random evaluation needs 0 < range_lo < range_hi");
        }
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> pick(cfg.range_lo, cfg.range_hi);
        std::string csv = "# zladder.zeta.csv/1\nt,z\n";
        for (int i = 0; i < count; ++i) {
            const double t = pick(rng);
            csv += compact_double(t) + "," + compact_double(hardy_z(t)) + "\n";
        }
        if (cfg.output.empty()) {
            std::cout << csv;
        } else {
            const std::string path = cfg.output + ".csv";
            write_text_file(path, csv);
            man.artifacts.push_back(path);
            std::cout << "wrote " << path << "\n";
        }
    } else {
        const double z = hardy_z(cfg.t);
        std::cout << "t = " << compact_double(cfg.t) << "\n";
        std::cout << "method = " << (cfg.t < 50.0 ? "euler-maclaurin" : "riemann-siegel")
                  << "\n";
        std::cout << "theta = " << compact_double(theta(cfg.t)) << "\n";
        std::cout << "Z = " << compact_double(z) << "\n";
    }
    man.timings_s.emplace_back("eval", timer.seconds());
    return kExitOk;
}

// Standalone builds retry at higher grid density instead of bouncing the
// resolution gate back to the user; the gate still trips (exit 3) if 5x
// density is not enough, which means the range itself is pathological.
LadderTable build_ladder_escalating(double t_lo, double t_hi, double* density_out) {
    GridPolicy dense;
    for (int attempt = 0; attempt < 5; ++attempt) {
        try {
            LadderTable table = build_ladder(t_lo, t_hi, dense);
            *density_out = dense.samples_per_gap;
            return table;
        } catch (const ResolutionError&) {
            if (attempt == 4) throw;
            dense.samples_per_gap *= 1.5;
        }
    }
    throw std::runtime_error("unreachable");
}

int run_ladder_build(const RunConfig& cfg, RunManifest& man) {
    Timer timer;
    double density = 0.0;
    const LadderTable table = build_ladder_escalating(cfg.range_lo, cfg.range_hi, &density);
    man.timings_s.emplace_back("build", timer.seconds());
    if (density != GridPolicy{}.samples_per_gap)
        std::cout << "note: grid density raised to " << compact_double(density)
                  << " samples per gap\n";

    fs::path path;
    if (!cfg.output.empty()) {
        path = cfg.output;
        if (path.extension() != ".zlt") path += ".zlt";
    } else {
        const std::string name = "ladder_" + compact_double(cfg.range_lo) + "_" +
                                 compact_double(cfg.range_hi) + ".zlt";
        path = cfg.cache_dir.empty() ? fs::path(name) : fs::path(cfg.cache_dir) / name;
    }
    Timer write_timer;
    std::error_code ec;
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path(), ec);
    table.save(path);
    man.artifacts.push_back(path.string());
    man.timings_s.emplace_back("write", write_timer.seconds());

    std::cout << "ladder-build: t in [" << compact_double(table.t_lo()) << ", "
              << compact_double(table.t_hi()) << "], knots = " << table.knots() << ", phi in ["
              << compact_double(table.phi_lo()) << ", " << compact_double(table.phi_hi())
              << "]\n";
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

int run_verify_gram(const RunConfig& cfg, RunManifest& man) {
    Timer table_timer;
    const LadderTable table = obtain_window_table(cfg.T, cfg, man.artifacts);
    man.timings_s.emplace_back("tables", table_timer.seconds());

    Timer gram_timer;
    const Family family = family_from_name(cfg.family);
    const GramReport rep =
        family == Family::general
            ? gram_transformed(table, cfg.alpha, cfg.beta, cfg.T, cfg.nmax, cfg.tol)
            : gram_transformed(table, family, cfg.T, cfg.nmax, cfg.tol);
    man.timings_s.emplace_back("gram", gram_timer.seconds());

    // default budgets resolve the smooth families about an order of
    // magnitude deeper than the endpoint-singular ones
    const double band = (rep.alpha < 0.0 || rep.beta < 0.0) ? 1e-4 : 1e-5;
    const bool pass = !rep.degraded && rep.max_offdiag <= band &&
                      rep.max_diag_reldev <= band && rep.route_disagreement <= band;

    emit_payload(cfg, gram_json(rep), gram_csv(rep), man);
    std::cout << "verify-gram: family=" << family_name(rep.family)
              << " alpha=" << compact_double(rep.alpha) << " beta=" << compact_double(rep.beta)
              << " T=" << compact_double(rep.T) << " nmax=" << rep.nmax << "\n";
    std::cout << "max_offdiag = " << compact_double(rep.max_offdiag) << "\n";
    std::cout << "max_diag_reldev = " << compact_double(rep.max_diag_reldev) << "\n";
    std::cout << "route_disagreement = " << compact_double(rep.route_disagreement) << "\n";
    std::cout << "tolerance_band = " << compact_double(band) << "\n";
    std::cout << "degraded = " << (rep.degraded ? 1 : 0) << "\n";
    std::cout << "verdict = " << (pass ? "pass" : "fail") << "\n";

    man.degraded = rep.degraded;
    if (!pass) {
        man.status = "tolerance";
        man.message = "gram entries outside the tolerance band or degraded";
        return kExitTolerance;
    }
    return kExitOk;
}

int run_scan(const RunConfig& cfg, RunManifest& man) {
    std::map<double, LadderTable> pool;
    const TableSource source = [&](double T) -> const LadderTable& {
        auto it = pool.find(T);
        if (it == pool.end()) {
            it = pool.emplace(T, obtain_window_table(T, cfg, man.artifacts)).first;
        }
        return it->second;
    };

    const Family family = family_from_name(cfg.family);
    const JacobiSpec spec = family == Family::general
                                ? make_spec(cfg.alpha, cfg.beta, cfg.n)
                                : make_spec(family, cfg.n);
    Timer timer;
    const AsymptoticScan scan = asymptotic_scan(source, spec, cfg.T_values, cfg.tol);
    man.timings_s.emplace_back("scan", timer.seconds());

    bool pass = true;
    std::cout << "scan-asymptotic: family=" << family_name(spec.family)
              << " n=" << spec.n << " limit=" << compact_double(scan.limit) << "\n";
    for (const auto& p : scan.points) {
        // the window has phi-length 2, so the ratio can only miss ln t_bar
        // by what ln t moves across it; 8/ln is a loose version of that
        const bool ok = !p.degraded && p.reldev <= 8.0 / std::log(p.t_bar);
        pass = pass && ok;
        man.degraded = man.degraded || p.degraded;
        std::cout << "T=" << compact_double(p.T) << " t_bar=" << compact_double(p.t_bar)
                  << " ratio=" << compact_double(p.ratio)
                  << " reldev=" << compact_double(p.reldev) << " degraded=" << (p.degraded ? 1 : 0)
                  << "\n";
    }
    std::cout << "verdict = " << (pass ? "pass" : "fail") << "\n";
    emit_payload(cfg, scan_json(scan), scan_csv(scan), man);

    if (!pass) {
        man.status = "tolerance";
        man.message = "scan point degraded or outside the deviation envelope";
        return kExitTolerance;
    }
    return kExitOk;
}

int run_window_check(const RunConfig& cfg, RunManifest& man) {
    std::map<double, LadderTable> pool;
    const TableSource source = [&](double T) -> const LadderTable& {
        auto it = pool.find(T);
        if (it == pool.end()) {
            it = pool.emplace(T, obtain_window_table(T, cfg, man.artifacts)).first;
        }
        return it->second;
    };
    Timer timer;
    const std::vector<WindowDistance> rows = window_distance_check(source, cfg.T_values);
    man.timings_s.emplace_back("windows", timer.seconds());

    std::cout << "window-check:\n";
    for (const auto& r : rows) {
        std::cout << "T=" << compact_double(r.T) << " t_bar=" << compact_double(r.t_bar)
                  << " ratio=" << compact_double(r.ratio)
                  << " scaled_length=" << compact_double(r.scaled_length) << "\n";
    }
    emit_payload(cfg, window_json(rows), window_csv(rows), man);
    return kExitOk;
}

int dispatch(const RunConfig& cfg, int eval_count, RunManifest& man) {
    switch (cfg.command) {
        case Command::zeta_eval:
            return run_zeta_eval(cfg, eval_count, man);
        case Command::ladder_build:
            return run_ladder_build(cfg, man);
        case Command::verify_gram:
            return run_verify_gram(cfg, man);
        case Command::scan_asymptotic:
            return run_scan(cfg, man);
        case Command::window_check:
            return run_window_check(cfg, man);
    }
    throw ConfigError("command: unknown enum value");
}

void write_manifest(RunManifest& man, int& code) {
    man.exit_code = code;
    const std::string path = man.config.output.empty() ? "zladder-manifest.json"
                                                       : man.config.output + ".manifest.json";
    try {
        write_text_file(path, manifest_json(man).dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << "manifest write failed: " << e.what() << "\n";
        if (code == kExitOk) code = kExitCacheIo;
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    bool have_config_file = false;

    // the defaults file is folded in before CLI11 sees the options, so
    // flag values always win
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) {
            path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            path = std::string(arg.substr(9));
        } else {
            continue;
        }
        try {
            cfg = parse_config_text(read_file(path));
            have_config_file = true;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            RunManifest man;
            man.status = "config-error";
            man.message = e.what();
            int code = kExitConfig;
            write_manifest(man, code);
            return code;
        }
        break;
    }

    CLI::App app{"surrogate zeta-ladder workbench: Jacobi orthogonality under the Z^2 weight"};
    std::string config_path;
    app.add_option("--config", config_path, "key=value defaults file (applied before flags)");
    app.require_subcommand(0, 1);

    int eval_count = 0;
    std::vector<double> range;

    CLI::App* eval = app.add_subcommand("zeta-eval", "evaluate the Hardy function Z(t)");
    eval->add_option("--t", cfg.t, "evaluation point")->capture_default_str();
    eval->add_option("--count", eval_count, "sample this many random points instead");
    eval->add_option("--range", range, "sampling range LO HI for --count")->expected(2);
    eval->add_option("--seed", cfg.seed, "random grid seed")->capture_default_str();
    eval->add_option("--output", cfg.output, "output stem for the sample CSV");

    CLI::App* build = app.add_subcommand("ladder-build", "tabulate phi1 over a t range");
    build->add_option("--range", range, "t span LO HI")->expected(2);
    build->add_option("--output", cfg.output, "ladder file path (.zlt appended if missing)");
    build->add_option("--cache-dir", cfg.cache_dir, "directory for the default file name");

    CLI::App* gram = app.add_subcommand("verify-gram",
                                        "two-route Gram matrix of the transplanted basis");
    gram->add_option("--family", cfg.family, "legendre | chebyshev-t | chebyshev-u | general")
        ->capture_default_str();
    gram->add_option("--alpha", cfg.alpha, "general-family exponent")->capture_default_str();
    gram->add_option("--beta", cfg.beta, "general-family exponent")->capture_default_str();
    gram->add_option("--T", cfg.T, "window position: image interval [T, T+2]")
        ->capture_default_str();
    gram->add_option("--nmax", cfg.nmax, "basis orders 0..nmax")->capture_default_str();
    gram->add_option("--tol", cfg.tol, "per-integral quadrature budget")->capture_default_str();
    gram->add_option("--output", cfg.output, "output stem for .json/.csv");
    gram->add_option("--cache-dir", cfg.cache_dir, "window ladder cache directory");

    CLI::App* scan = app.add_subcommand("scan-asymptotic",
                                        "diagonal ratio against ln t-bar along increasing T");
    scan->add_option("--family", cfg.family, "legendre | chebyshev-t | chebyshev-u | general")
        ->capture_default_str();
    scan->add_option("--alpha", cfg.alpha, "general-family exponent")->capture_default_str();
    scan->add_option("--beta", cfg.beta, "general-family exponent")->capture_default_str();
    scan->add_option("--n", cfg.n, "basis order")->capture_default_str();
    scan->add_option("--T-values", cfg.T_values, "increasing window positions")
        ->delimiter(',');
    scan->add_option("--tol", cfg.tol, "per-integral quadrature budget")->capture_default_str();
    scan->add_option("--output", cfg.output, "output stem for .json/.csv");
    scan->add_option("--cache-dir", cfg.cache_dir, "window ladder cache directory");

    CLI::App* windows = app.add_subcommand("window-check", "preimage drift of [T, T+2] windows");
    windows->add_option("--T-values", cfg.T_values, "increasing window positions")
        ->delimiter(',');
    windows->add_option("--output", cfg.output, "output stem for .json/.csv");
    windows->add_option("--cache-dir", cfg.cache_dir, "window ladder cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // help text
        }
        app.exit(e);
        RunManifest man;
        man.config = cfg;
        man.status = "config-error";
        man.message = e.what();
        int code = kExitConfig;
        write_manifest(man, code);
        return code;
    }

    if (eval->parsed()) cfg.command = Command::zeta_eval;
    if (build->parsed()) cfg.command = Command::ladder_build;
    if (gram->parsed()) cfg.command = Command::verify_gram;
    if (scan->parsed()) cfg.command = Command::scan_asymptotic;
    if (windows->parsed()) cfg.command = Command::window_check;
    if (range.size() == 2) {
        cfg.range_lo = range[0];
        cfg.range_hi = range[1];
    }

    // cache dir precedence: flag > environment > defaults file
    const bool cache_flag_given =
        (build->parsed() && build->count("--cache-dir")) ||
        (gram->parsed() && gram->count("--cache-dir")) ||
        (scan->parsed() && scan->count("--cache-dir")) ||
        (windows->parsed() && windows->count("--cache-dir"));
    if (!cache_flag_given) {
        if (const char* env = std::getenv("ZLADDER_CACHE_DIR")) {
            cfg.cache_dir = env;
        }
    }

    RunManifest man;
    man.config = cfg;
    int code = kExitOk;

    if (app.get_subcommands().empty() && !have_config_file) {
        std::cerr << app.help() << "\n";
        man.status = "config-error";
        man.message = "no command given (pass a subcommand or --config)";
        code = kExitConfig;
        write_manifest(man, code);
        return code;
    }

    try {
        validate(cfg);
        man.config = cfg;
        code = dispatch(cfg, eval_count, man);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        man.status = "config-error";
        man.message = e.what();
        code = kExitConfig;
    } catch (const CacheError& e) {
        std::cerr << "error: " << e.what() << "\n";
        man.status = "cache-io";
        man.message = e.what();
        code = kExitCacheIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        man.status = "cache-io";
        man.message = e.what();
        code = kExitCacheIo;
    } catch (const ResolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        man.status = "tolerance";
        man.message = e.what();
        code = kExitTolerance;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        man.status = "config-error";
        man.message = e.what();
        code = kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        man.status = "config-error";
        man.message = e.what();
        code = kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        man.status = "tolerance";
        man.message = e.what();
        code = kExitTolerance;
    }

    write_manifest(man, code);
    return code;
}
