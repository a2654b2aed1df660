#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cpjam/montecarlo.hpp"

namespace cpjam {

inline constexpr const char* kToolVersion = "0.1.0";

// Command-line overrides applied on top of a parsed config.
struct RunOverrides {
    std::optional<std::uint64_t> master_seed;
    std::optional<std::size_t> n_blocks;
    std::optional<double> sample_rate_hz;
    std::optional<std::size_t> jam_offset_samples;
    std::optional<unsigned> n_workers;
    bool no_shadowing = false;
    bool no_jam = false;
};

// Parses flat `key = value` text; missing keys take the urban-macro defaults.
// Malformed lines, unknown keys and out-of-range values raise std::runtime_error
// naming the key and line number.
ExperimentConfig parse_config(const std::string& text);

void apply_overrides(ExperimentConfig& config, const RunOverrides& overrides);

// Human-readable dump of a resolved config (used by `cpjam validate`).
std::string format_config(const ExperimentConfig& config);

// Deterministic CSV: header + rows sorted by (sweep_point, observer), 6
// significant digits, written via a temp file and rename.
void emit_csv(const std::vector<BerRecord>& records, const std::filesystem::path& path);

void write_manifest(const ExperimentConfig& config, const std::string& preset,
                    const std::filesystem::path& path);

// Runs one of the figure presets and writes CSV + manifest into out_dir.
// Returns the list of files written.
std::vector<std::filesystem::path> run_preset(const std::string& name,
                                              const ExperimentConfig& config,
                                              const std::filesystem::path& out_dir);

}  // namespace cpjam
