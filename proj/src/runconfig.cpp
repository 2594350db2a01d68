#include "zladder/runconfig.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>

#include "zladder/jacobi.hpp"

namespace zladder {

namespace {

constexpr const char* kCommandNames[] = {"zeta-eval", "ladder-build", "verify-gram",
                                         "scan-asymptotic", "window-check"};

std::string render(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view field, std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError(std::string(field) + ": not a real number: '" + std::string(text) +
                          "'");
    }
    return v;
}

template <class Int>
Int parse_int(std::string_view field, std::string_view text) {
    Int v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError(std::string(field) + ": not an integer: '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> parse_list(std::string_view field, std::string_view text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item =
            trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (item.empty()) {
            throw ConfigError(std::string(field) + ": empty list item");
        }
        out.push_back(parse_double(field, item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void require_finite(const char* field, double v) {
    if (!std::isfinite(v)) {
        throw ConfigError(std::string(field) + ": must be finite");
    }
}

void require_single_line(const char* field, const std::string& s) {
    if (s.find('\n') != std::string::npos || s.find('\r') != std::string::npos) {
        throw ConfigError(std::string(field) + ": must be a single line");
    }
}

}  // namespace

const char* command_name(Command command) {
    const auto i = static_cast<std::size_t>(command);
    if (i >= std::size(kCommandNames)) {
        throw std::invalid_argument("command_name: unknown enum value");
    }
    return kCommandNames[i];
}

Command command_from_name(std::string_view name) {
    for (std::size_t i = 0; i < std::size(kCommandNames); ++i) {
        if (name == kCommandNames[i]) return static_cast<Command>(i);
    }
    throw ConfigError("command: unknown command '" + std::string(name) +
                      "' (expected zeta-eval, ladder-build, verify-gram, scan-asymptotic or "
                      "window-check)");
}

std::string config_text(const RunConfig& cfg) {
    std::string out;
    out.reserve(256);
    const auto line = [&out](std::string_view key, std::string_view value) {
        out.append(key);
        out.push_back('=');
        out.append(value);
        out.push_back('\n');
    };
    line("command", command_name(cfg.command));
    line("t", render(cfg.t));
    line("T", render(cfg.T));
    std::string list;
    for (std::size_t i = 0; i < cfg.T_values.size(); ++i) {
        if (i) list.push_back(',');
        list += render(cfg.T_values[i]);
    }
    line("T_values", list);
    line("range_lo", render(cfg.range_lo));
    line("range_hi", render(cfg.range_hi));
    line("family", cfg.family);
    line("alpha", render(cfg.alpha));
    line("beta", render(cfg.beta));
    line("nmax", std::to_string(cfg.nmax));
    line("n", std::to_string(cfg.n));
    line("tol", render(cfg.tol));
    line("output", cfg.output);
    line("cache_dir", cfg.cache_dir);
    line("seed", std::to_string(cfg.seed));
    return out;
}

RunConfig parse_config_text(std::string_view text) {
    RunConfig cfg;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const std::string_view stripped = trim(raw);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line missing '=': '" + std::string(stripped) + "'");
        }
        const std::string_view key = trim(stripped.substr(0, eq));
        const std::string_view value = trim(stripped.substr(eq + 1));

        if (key == "command") {
            cfg.command = command_from_name(value);
        } else if (key == "t") {
            cfg.t = parse_double("t", value);
        } else if (key == "T") {
            cfg.T = parse_double("T", value);
        } else if (key == "T_values") {
            cfg.T_values = parse_list("T_values", value);
        } else if (key == "range_lo") {
            cfg.range_lo = parse_double("range_lo", value);
        } else if (key == "range_hi") {
            cfg.range_hi = parse_double("range_hi", value);
        } else if (key == "family") {
            cfg.family = std::string(value);
        } else if (key == "alpha") {
            cfg.alpha = parse_double("alpha", value);
        } else if (key == "beta") {
            cfg.beta = parse_double("beta", value);
        } else if (key == "nmax") {
            cfg.nmax = parse_int<int>("nmax", value);
        } else if (key == "n") {
            cfg.n = parse_int<int>("n", value);
        } else if (key == "tol") {
            cfg.tol = parse_double("tol", value);
        } else if (key == "output") {
            cfg.output = std::string(value);
        } else if (key == "cache_dir") {
            cfg.cache_dir = std::string(value);
        } else if (key == "seed") {
            cfg.seed = parse_int<std::uint64_t>("seed", value);
        } else {
            throw ConfigError("unknown config key: '" + std::string(key) + "'");
        }
    }
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    require_finite("t", cfg.t);
    require_finite("T", cfg.T);
    require_finite("range_lo", cfg.range_lo);
    require_finite("range_hi", cfg.range_hi);
    require_finite("alpha", cfg.alpha);
    require_finite("beta", cfg.beta);
    require_finite("tol", cfg.tol);
    for (double v : cfg.T_values) require_finite("T_values", v);
    require_single_line("family", cfg.family);
    require_single_line("output", cfg.output);
    require_single_line("cache_dir", cfg.cache_dir);

    Family family = Family::general;
    try {
        family = family_from_name(cfg.family);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("family: ") + e.what());
    }
    if (family == Family::general) {
        if (!(cfg.alpha > -1.0)) throw ConfigError("alpha: requires alpha > -1");
        if (!(cfg.beta > -1.0)) throw ConfigError("beta: requires beta > -1");
    }
    if (cfg.nmax < 0 || cfg.nmax > 12) {
        throw ConfigError("nmax: must be in [0, 12]");
    }
    if (cfg.n < 0 || cfg.n > 12) {
        throw ConfigError("n: must be in [0, 12]");
    }
    if (!(cfg.tol > 0.0)) {
        throw ConfigError("tol: must be positive");
    }

    switch (cfg.command) {
        case Command::zeta_eval:
            if (!(cfg.t > 0.0)) {
                throw ConfigError("t: must be positive");
            }
            break;
        case Command::ladder_build:
            if (!(cfg.range_lo >= 50.0)) {
                throw ConfigError("range_lo: ladder domain starts at t = 50");
            }
            if (!(cfg.range_hi > cfg.range_lo)) {
                throw ConfigError("range_hi: must exceed range_lo");
            }
            break;
        case Command::verify_gram:
            if (!(cfg.T >= 100.0 && cfg.T <= 1e6)) {
                throw ConfigError("T: requires 100 <= T <= 1e6");
            }
            break;
        case Command::scan_asymptotic:
        case Command::window_check:
            if (cfg.T_values.empty()) {
                throw ConfigError("T_values: at least one value required");
            }
            for (std::size_t i = 0; i < cfg.T_values.size(); ++i) {
                if (!(cfg.T_values[i] >= 100.0 && cfg.T_values[i] <= 1e6)) {
                    throw ConfigError("T_values: entries must lie in [100, 1e6]");
                }
                if (i && !(cfg.T_values[i] > cfg.T_values[i - 1])) {
                    throw ConfigError("T_values: must be strictly increasing");
                }
            }
            break;
    }
}

}  // namespace zladder
