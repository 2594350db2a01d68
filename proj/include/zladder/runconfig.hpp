#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zladder {

enum class Command { zeta_eval, ladder_build, verify_gram, scan_asymptotic, window_check };

// Process exit codes shared by the CLI and its smoke tests.  kExitOk is
// reserved for runs where every reported entry met its quadrature budget;
// a run that completes but carries a degraded flag exits kExitTolerance.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTolerance = 3;
inline constexpr int kExitCacheIo = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything that determines one run of the tool.  The struct survives a
// round trip through config_text() / parse_config_text() bit for bit, so
// the echo embedded in a run manifest can be replayed directly.
//
// Fields are grouped by the command that reads them; unread fields keep
// their defaults and are still echoed, which keeps the text form total.
struct RunConfig {
    Command command = Command::zeta_eval;

    double t = 100.0;              // zeta-eval abscissa
    double T = 10000.0;            // window position for verify-gram
    std::vector<double> T_values;  // scan-asymptotic / window-check positions
    double range_lo = 100.0;       // ladder-build span in t
    double range_hi = 110.0;

    std::string family = "legendre";
    double alpha = 0.0;  // read only for the general family
    double beta = 0.0;
    int nmax = 8;
    int n = 0;           // scan-asymptotic basis order
    double tol = 3e-8;

    std::string output;     // artifact stem; empty means stdout only
    std::string cache_dir;  // ladder cache directory; empty disables caching
    std::uint64_t seed = 0; // randomized zeta-eval grids

    bool operator==(const RunConfig&) const = default;
};

const char* command_name(Command command);
Command command_from_name(std::string_view name);

// Canonical key=value form, one field per line, every field present,
// doubles rendered shortest-round-trip.
std::string config_text(const RunConfig& cfg);

// Accepts the config_text() form plus blank lines, '#' comments and
// whitespace around keys and values.  Unknown keys, malformed values and
// out-of-range fields throw ConfigError with the field name leading the
// message.  The returned config has already passed validate().
RunConfig parse_config_text(std::string_view text);

// Range checks shared by the flag path and the file path.  Throws
// ConfigError naming the offending field.
void validate(const RunConfig& cfg);

}  // namespace zladder
