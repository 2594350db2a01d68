#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zladder/harness.hpp"
#include "zladder/runconfig.hpp"

namespace zladder {

inline constexpr const char* kToolVersion = "1.0.0";

using ordered_json = nlohmann::ordered_json;

// Report payloads carry no timestamps, timings or environment data, so a
// rerun with the same config (warm cache or cold) serializes to the same
// bytes.  Wall-clock facts live only in the run manifest.
ordered_json gram_json(const GramReport& rep);
ordered_json scan_json(const AsymptoticScan& scan);
ordered_json window_json(std::span<const WindowDistance> rows);
ordered_json config_json(const RunConfig& cfg);

// Flat mirrors of the JSON payloads for plotting: one row per matrix
// entry / scan point / window.  The first line is a '#' comment naming
// the column schema version; the second is the column header.
std::string gram_csv(const GramReport& rep);
std::string scan_csv(const AsymptoticScan& scan);
std::string window_csv(std::span<const WindowDistance> rows);

struct RunManifest {
    RunConfig config;
    std::vector<std::string> artifacts;                   // paths written
    std::vector<std::pair<std::string, double>> timings_s;
    bool degraded = false;
    std::string status = "ok";  // ok | config-error | tolerance | cache-io
    std::string message;        // error text on failure paths
    int exit_code = 0;
};

// The manifest is written on every exit path, success or not.  The
// generated_at field is the single nondeterministic entry.
ordered_json manifest_json(const RunManifest& m);

// Atomic text write: temp file in the target directory, then rename.
// Creates parent directories.  Throws CacheError on IO trouble.
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Shortest round-trip decimal form; shared by CSV cells, artifact names
// and CLI summary lines.
std::string compact_double(double v);

}  // namespace zladder
