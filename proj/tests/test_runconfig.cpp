#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "zladder/reports.hpp"
#include "zladder/runconfig.hpp"

using namespace zladder;

namespace {

RunConfig sample_scan_config() {
    RunConfig cfg;
    cfg.command = Command::scan_asymptotic;
    cfg.T_values = {1000.0, 12345.678901234567, 1e5};
    cfg.family = "general";
    cfg.alpha = 0.3;
    cfg.beta = -0.4;
    cfg.n = 2;
    cfg.tol = std::nextafter(3e-8, 1.0);
    cfg.output = "out/scan";
    cfg.cache_dir = "/tmp/zladder cache";
    cfg.seed = 0xDEADBEEFCAFEF00Dull;
    return cfg;
}

}  // namespace

TEST_CASE("exit codes are pinned") {
    CHECK(kExitOk == 0);
    CHECK(kExitConfig == 2);
    CHECK(kExitTolerance == 3);
    CHECK(kExitCacheIo == 4);
}

TEST_CASE("command names round-trip") {
    for (Command c : {Command::zeta_eval, Command::ladder_build, Command::verify_gram,
                      Command::scan_asymptotic, Command::window_check}) {
        CHECK(command_from_name(command_name(c)) == c);
    }
    CHECK_THROWS_AS(command_from_name("gram"), ConfigError);
}

TEST_CASE("config text round-trips bit for bit") {
    SUBCASE("defaults") {
        const RunConfig cfg;
        CHECK(parse_config_text(config_text(cfg)) == cfg);
    }
    SUBCASE("scan with awkward doubles and spaced path") {
        const RunConfig cfg = sample_scan_config();
        const RunConfig back = parse_config_text(config_text(cfg));
        CHECK(back == cfg);
        CHECK(back.tol == cfg.tol);  // nextafter survives exactly
        CHECK(back.T_values[1] == 12345.678901234567);
    }
    SUBCASE("ladder build") {
        RunConfig cfg;
        cfg.command = Command::ladder_build;
        cfg.range_lo = 1000.0 / 3.0;
        cfg.range_hi = 0.1 + cfg.range_lo;
        cfg.output = "ladder.zlt";
        CHECK(parse_config_text(config_text(cfg)) == cfg);
    }
    SUBCASE("text form is idempotent") {
        const std::string text = config_text(sample_scan_config());
        CHECK(config_text(parse_config_text(text)) == text);
    }
}

TEST_CASE("parser accepts comments, blanks and padding") {
    RunConfig expect;
    expect.command = Command::verify_gram;
    expect.T = 10000.0;
    expect.nmax = 5;
    const RunConfig got = parse_config_text(
        "# gram run\n"
        "\n"
        "  command =  verify-gram  \r\n"
        "\tT= 10000\n"
        "nmax =5\n");
    CHECK(got == expect);
}

TEST_CASE("parse errors name the offending field") {
    const auto message_of = [](const char* text) {
        try {
            parse_config_text(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("(no throw)");
    };
    CHECK(message_of("command=gram-verify") .find("command") == 0);
    CHECK(message_of("family=hermite")      .find("family") == 0);
    CHECK(message_of("tol=fast")            .find("tol") == 0);
    CHECK(message_of("tol=0")               .find("tol") == 0);
    CHECK(message_of("tol=1e-8 # inline")   .find("tol") == 0);
    CHECK(message_of("nmax=five")           .find("nmax") == 0);
    CHECK(message_of("nmax=13")             .find("nmax") == 0);
    CHECK(message_of("seed=-1")             .find("seed") == 0);
    CHECK(message_of("T=nan")               .find("T") == 0);
    CHECK(message_of("command=scan-asymptotic\nT_values=")
              .find("T_values") == 0);
    CHECK(message_of("command=scan-asymptotic\nT_values=1000,,2000")
              .find("T_values") == 0);
    CHECK(message_of("command=scan-asymptotic\nT_values=2000,1000")
              .find("T_values") == 0);
    CHECK(message_of("command=scan-asymptotic\nT_values=50")
              .find("T_values") == 0);
    CHECK(message_of("command=verify-gram\nT=50").find("T") == 0);
    CHECK(message_of("command=ladder-build\nrange_lo=0\nrange_hi=100")
              .find("range_lo") == 0);
    CHECK(message_of("command=ladder-build\nrange_lo=100\nrange_hi=90")
              .find("range_hi") == 0);
    CHECK(message_of("family=general\nalpha=-1").find("alpha") == 0);
    CHECK(message_of("family=general\nbeta=-1.5").find("beta") == 0);
    CHECK(message_of("n=-1").find("n") == 0);
    CHECK(message_of("color=red").find("color") != std::string::npos);
    CHECK(message_of("just words") != "(no throw)");
}

TEST_CASE("validate rejects multi-line strings") {
    RunConfig cfg;
    cfg.output = "a\nb";
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("gram report serialization") {
    GramReport rep;
    rep.family = Family::legendre;
    rep.T = 10000.0;
    rep.nmax = 1;
    rep.gram.setZero(2, 2);
    rep.gram(0, 0) = 2.0;
    rep.gram(1, 1) = 2.0 / 3.0;
    rep.gram(0, 1) = rep.gram(1, 0) = 3e-11;
    rep.route_b = rep.gram;
    rep.route_b(1, 1) += 1e-12;
    rep.closed_form_diag.resize(2);
    rep.closed_form_diag << 2.0, 2.0 / 3.0;
    rep.max_offdiag = 3e-11;
    rep.max_diag_reldev = 1.5e-12;
    rep.route_disagreement = 1e-12;

    const ordered_json j = gram_json(rep);
    CHECK(j["schema"] == "zladder.gram/1");
    CHECK(j["family"] == "legendre");
    CHECK(j["nmax"] == 1);
    CHECK(j["degraded"] == false);
    CHECK(j["gram"][0][0] == 2.0);
    CHECK(j["gram"][1][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(j["route_b"].size() == 2);
    CHECK(j["closed_form_diag"][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // key order is part of the payload contract
    CHECK(j.dump().find("\"schema\"") < j.dump().find("\"family\""));

    const std::string csv = gram_csv(rep);
    CHECK(csv.find("# zladder.gram.csv/1\n") == 0);
    CHECK(csv.find("family,alpha,beta,T,nmax,m,n,value,route_b,closed_form,abs_route_gap\n") !=
          std::string::npos);
    // 2 header lines + 4 matrix entries
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    CHECK(csv.find("legendre,0,0,10000,1,0,0,2,2,2,0\n") != std::string::npos);

    // serialized doubles survive a strtod round trip
    const std::string v = ordered_json(rep.gram(1, 1)).dump();
    CHECK(std::strtod(v.c_str(), nullptr) == rep.gram(1, 1));
}

TEST_CASE("scan and window serialization") {
    AsymptoticScan scan;
    scan.spec = make_spec(Family::chebyshev_t, 1);
    scan.limit = 1.5707963267948966;
    scan.points.push_back({1000.0, 1069.3, 7.30, 1.046, 9.7e-6, false});
    scan.points.push_back({10000.0, 10551.6, 14.56, 1.5708, 8.3e-7, true});

    const ordered_json j = scan_json(scan);
    CHECK(j["schema"] == "zladder.scan/1");
    CHECK(j["family"] == "chebyshev-t");
    CHECK(j["n"] == 1);
    CHECK(j["points"].size() == 2);
    CHECK(j["points"][1]["degraded"] == true);
    CHECK(j["points"][0]["reldev"] == 9.7e-6);

    const std::string csv = scan_csv(scan);
    CHECK(csv.find("# zladder.scan.csv/1\n") == 0);
    CHECK(csv.find(",degraded\n") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find(",1\n") != std::string::npos);  // degraded row flag

    const std::vector<WindowDistance> rows = {{1000.0, 1069.3, 1.0693, 0.001},
                                              {10000.0, 10551.6, 1.0552, 0.00014}};
    const ordered_json w = window_json(rows);
    CHECK(w["schema"] == "zladder.window/1");
    CHECK(w["rows"].size() == 2);
    CHECK(w["rows"][0]["ratio"] == 1.0693);
    const std::string wcsv = window_csv(rows);
    CHECK(wcsv.find("# zladder.window.csv/1\nT,t_bar,ratio,scaled_length\n") == 0);
}

TEST_CASE("manifest is deterministic apart from its timestamp") {
    RunManifest m;
    m.config = sample_scan_config();
    m.artifacts = {"out/scan.json", "out/scan.csv"};
    m.timings_s = {{"build_table", 1.25}, {"quadrature", 0.5}};
    m.degraded = true;
    m.status = "tolerance";
    m.exit_code = kExitTolerance;

    ordered_json a = manifest_json(m);
    ordered_json b = manifest_json(m);
    CHECK(a["schema"] == "zladder.manifest/1");
    CHECK(a["tool_version"] == kToolVersion);
    CHECK(a["exit_code"] == 3);
    CHECK(a["degraded"] == true);
    CHECK(a["config"]["command"] == "scan-asymptotic");
    CHECK(a["config"]["seed"] == 0xDEADBEEFCAFEF00Dull);
    CHECK(a["timings_s"]["build_table"] == 1.25);

    const std::string stamp = a["generated_at"];
    CHECK(stamp.size() == 20);
    CHECK(stamp[4] == '-');
    CHECK(stamp[10] == 'T');
    CHECK(stamp.back() == 'Z');

    a.erase("generated_at");
    b.erase("generated_at");
    CHECK(a.dump() == b.dump());

    // the config echo replays through the text form
    RunConfig echo;
    echo.command = command_from_name(a["config"]["command"].get<std::string>());
    CHECK(echo.command == m.config.command);
}

TEST_CASE("write_text_file is atomic-style and creates directories") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "zladder_report_test";
    fs::remove_all(dir);
    const fs::path target = dir / "nested" / "report.json";
    write_text_file(target, "{\"ok\":true}\n");
    std::ifstream in(target);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == "{\"ok\":true}\n");
    CHECK_FALSE(fs::exists(dir / "nested" / "report.json.tmp"));

    // overwrite keeps the new content
    write_text_file(target, "second\n");
    std::ifstream in2(target);
    std::string body2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
    CHECK(body2 == "second\n");

    // parent is a regular file: surfaced as CacheError
    const fs::path blocked = target / "impossible.json";
    CHECK_THROWS_AS(write_text_file(blocked, "x"), CacheError);
    fs::remove_all(dir);
}
