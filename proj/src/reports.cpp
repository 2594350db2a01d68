#include "zladder/reports.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "zladder/hardy.hpp"
#include "zladder/jacobi.hpp"

namespace zladder {

namespace {

void row(std::string& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out.push_back(',');
        out.append(c);
        first = false;
    }
    out.push_back('\n');
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

ordered_json gram_json(const GramReport& rep) {
    ordered_json j;
    j["schema"] = "zladder.gram/1";
    j["family"] = family_name(rep.family);
    j["alpha"] = rep.alpha;
    j["beta"] = rep.beta;
    j["T"] = rep.T;
    j["nmax"] = rep.nmax;
    j["degraded"] = rep.degraded;
    j["max_offdiag"] = rep.max_offdiag;
    j["max_diag_reldev"] = rep.max_diag_reldev;
    j["route_disagreement"] = rep.route_disagreement;
    ordered_json diag = ordered_json::array();
    for (Eigen::Index i = 0; i < rep.closed_form_diag.size(); ++i) {
        diag.push_back(rep.closed_form_diag(i));
    }
    j["closed_form_diag"] = std::move(diag);
    j["gram"] = matrix_json(rep.gram);
    j["route_b"] = matrix_json(rep.route_b);
    return j;
}

ordered_json scan_json(const AsymptoticScan& scan) {
    ordered_json j;
    j["schema"] = "zladder.scan/1";
    j["family"] = family_name(scan.spec.family);
    j["alpha"] = scan.spec.alpha;
    j["beta"] = scan.spec.beta;
    j["n"] = scan.spec.n;
    j["limit"] = scan.limit;
    ordered_json pts = ordered_json::array();
    for (const auto& p : scan.points) {
        ordered_json q;
        q["T"] = p.T;
        q["t_bar"] = p.t_bar;
        q["integral"] = p.integral;
        q["ratio"] = p.ratio;
        q["reldev"] = p.reldev;
        q["degraded"] = p.degraded;
        pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    return j;
}

ordered_json window_json(std::span<const WindowDistance> rows) {
    ordered_json j;
    j["schema"] = "zladder.window/1";
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json q;
        q["T"] = r.T;
        q["t_bar"] = r.t_bar;
        q["ratio"] = r.ratio;
        q["scaled_length"] = r.scaled_length;
        out.push_back(std::move(q));
    }
    j["rows"] = std::move(out);
    return j;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = command_name(cfg.command);
    j["t"] = cfg.t;
    j["T"] = cfg.T;
    j["T_values"] = cfg.T_values;
    j["range_lo"] = cfg.range_lo;
    j["range_hi"] = cfg.range_hi;
    j["family"] = cfg.family;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["nmax"] = cfg.nmax;
    j["n"] = cfg.n;
    j["tol"] = cfg.tol;
    j["output"] = cfg.output;
    j["cache_dir"] = cfg.cache_dir;
    j["seed"] = cfg.seed;
    return j;
}

std::string gram_csv(const GramReport& rep) {
    std::string out = "# zladder.gram.csv/1\n";
    row(out, {"family", "alpha", "beta", "T", "nmax", "m", "n", "value", "route_b",
              "closed_form", "abs_route_gap"});
    const std::string family = family_name(rep.family);
    const std::string alpha = compact_double(rep.alpha);
    const std::string beta = compact_double(rep.beta);
    const std::string T = compact_double(rep.T);
    const std::string nmax = std::to_string(rep.nmax);
    for (Eigen::Index m = 0; m < rep.gram.rows(); ++m) {
        for (Eigen::Index n = 0; n < rep.gram.cols(); ++n) {
            const double closed = m == n ? rep.closed_form_diag(m) : 0.0;
            row(out, {family, alpha, beta, T, nmax, std::to_string(m), std::to_string(n),
                      compact_double(rep.gram(m, n)), compact_double(rep.route_b(m, n)),
                      compact_double(closed),
                      compact_double(std::abs(rep.gram(m, n) - rep.route_b(m, n)))});
        }
    }
    return out;
}

std::string scan_csv(const AsymptoticScan& scan) {
    std::string out = "# zladder.scan.csv/1\n";
    row(out, {"family", "alpha", "beta", "n", "limit", "T", "t_bar", "integral", "ratio",
              "reldev", "degraded"});
    const std::string family = family_name(scan.spec.family);
    const std::string alpha = compact_double(scan.spec.alpha);
    const std::string beta = compact_double(scan.spec.beta);
    const std::string n = std::to_string(scan.spec.n);
    const std::string limit = compact_double(scan.limit);
    for (const auto& p : scan.points) {
        row(out, {family, alpha, beta, n, limit, compact_double(p.T), compact_double(p.t_bar),
                  compact_double(p.integral), compact_double(p.ratio), compact_double(p.reldev),
                  p.degraded ? "1" : "0"});
    }
    return out;
}

std::string window_csv(std::span<const WindowDistance> rows) {
    std::string out = "# zladder.window.csv/1\n";
    row(out, {"T", "t_bar", "ratio", "scaled_length"});
    for (const auto& r : rows) {
        row(out, {compact_double(r.T), compact_double(r.t_bar), compact_double(r.ratio), compact_double(r.scaled_length)});
    }
    return out;
}

ordered_json manifest_json(const RunManifest& m) {
    ordered_json j;
    j["schema"] = "zladder.manifest/1";
    j["tool_version"] = kToolVersion;
    j["generated_at"] = utc_now();
    j["command"] = command_name(m.config.command);
    j["config"] = config_json(m.config);
    j["artifacts"] = m.artifacts;
    ordered_json timings = ordered_json::object();
    for (const auto& [name, seconds] : m.timings_s) timings[name] = seconds;
    j["timings_s"] = std::move(timings);
    j["degraded"] = m.degraded;
    j["status"] = m.status;
    j["message"] = m.message;
    j["exit_code"] = m.exit_code;
    return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::error_code ec;
    if (!path.parent_path().empty()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw CacheError("report: cannot create " + path.parent_path().string() + ": " +
                             ec.message());
        }
    }
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
            throw CacheError("report: cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw CacheError("report: cannot move into place: " + ec.message());
    }
}

std::string compact_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace zladder
