#include "cpjam/cli_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cpjam {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(const std::string& key, std::size_t line, const std::string& what) {
    std::ostringstream os;
    os << "config error at line " << line << ", key `" << key << "`: " << what;
    throw std::runtime_error(os.str());
}

double parse_real(const std::string& key, std::size_t line, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        config_error(key, line, "not a number: `" + value + "`");
    }
    if (pos != value.size())
        config_error(key, line, "trailing characters in `" + value + "`");
    return v;
}

std::uint64_t parse_uint(const std::string& key, std::size_t line, const std::string& value) {
    const double v = parse_real(key, line, value);
    if (v < 0.0 || v != std::floor(v))
        config_error(key, line, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

std::vector<double> default_positions() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    config.axis = SweepAxis::relay_position;
    config.sweep_values = default_positions();

    double pj_ratio = 1.0;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            config_error(line, lineno, "expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            config_error(key.empty() ? "<empty>" : key, lineno, "expected `key = value`");

        Scenario& sc = config.base;
        if (key == "fc_ghz") {
            sc.fc_ghz = parse_real(key, lineno, value);
            if (sc.fc_ghz <= 0.0)
                config_error(key, lineno, "must be positive");
        } else if (key == "shadow_sigma_db") {
            sc.shadow_sigma_db = parse_real(key, lineno, value);
            if (sc.shadow_sigma_db < 0.0)
                config_error(key, lineno, "must be >= 0");
        } else if (key == "ptx_dbm") {
            sc.p1_dbm = sc.p2_dbm = parse_real(key, lineno, value);
        } else if (key == "n0_dbm_per_hz") {
            sc.n0_dbm_per_hz = parse_real(key, lineno, value);
        } else if (key == "d_sd_m") {
            sc.d_sd_m = parse_real(key, lineno, value);
            if (sc.d_sd_m <= 0.0)
                config_error(key, lineno, "must be positive");
        } else if (key == "cir_len") {
            sc.cir_len = parse_uint(key, lineno, value);
            if (sc.cir_len == 0)
                config_error(key, lineno, "must be >= 1");
        } else if (key == "n_fft") {
            sc.n_fft = parse_uint(key, lineno, value);
            if (!is_power_of_two(sc.n_fft))
                config_error(key, lineno, "must be a power of two");
        } else if (key == "cp_len") {
            sc.cp_len = parse_uint(key, lineno, value);
        } else if (key == "sample_rate_hz") {
            sc.sample_rate_hz = parse_real(key, lineno, value);
            if (sc.sample_rate_hz <= 0.0)
                config_error(key, lineno, "must be positive");
        } else if (key == "decay_span_db") {
            sc.decay_span_db = parse_real(key, lineno, value);
            if (sc.decay_span_db < 0.0)
                config_error(key, lineno, "must be >= 0");
        } else if (key == "pj_ratio") {
            pj_ratio = parse_real(key, lineno, value);
            if (pj_ratio < 0.0)
                config_error(key, lineno, "must be >= 0");
        } else if (key == "n_blocks") {
            config.n_blocks = parse_uint(key, lineno, value);
            if (config.n_blocks == 0)
                config_error(key, lineno, "must be >= 1");
        } else if (key == "master_seed") {
            config.master_seed = parse_uint(key, lineno, value);
        } else if (key == "n_workers") {
            config.n_workers = static_cast<unsigned>(parse_uint(key, lineno, value));
            if (config.n_workers == 0)
                config_error(key, lineno, "must be >= 1");
        } else {
            config_error(key, lineno, "unknown key");
        }
    }

    config.base.pj_dbm = pj_ratio > 0.0
                             ? config.base.p1_dbm + 10.0 * std::log10(pj_ratio)
                             : -std::numeric_limits<double>::infinity();
    return config;
}

void apply_overrides(ExperimentConfig& config, const RunOverrides& overrides) {
    if (overrides.master_seed)
        config.master_seed = *overrides.master_seed;
    if (overrides.n_blocks)
        config.n_blocks = *overrides.n_blocks;
    if (overrides.sample_rate_hz)
        config.base.sample_rate_hz = *overrides.sample_rate_hz;
    if (overrides.jam_offset_samples)
        config.base.jam_offset_override_samples = *overrides.jam_offset_samples;
    if (overrides.n_workers)
        config.n_workers = *overrides.n_workers;
    if (overrides.no_shadowing)
        config.shadowing_enabled = false;
    if (overrides.no_jam)
        config.base.pj_dbm = -std::numeric_limits<double>::infinity();
}

namespace {

nlohmann::json config_json(const ExperimentConfig& config) {
    const Scenario& sc = config.base;
    nlohmann::json j;
    j["d_sd_m"] = sc.d_sd_m;
    j["d_sr_m"] = sc.d_sr_m;
    j["p1_dbm"] = sc.p1_dbm;
    j["p2_dbm"] = sc.p2_dbm;
    j["pj_dbm"] = std::isinf(sc.pj_dbm) ? nlohmann::json("-inf") : nlohmann::json(sc.pj_dbm);
    j["fc_ghz"] = sc.fc_ghz;
    j["sample_rate_hz"] = sc.sample_rate_hz;
    j["n_fft"] = sc.n_fft;
    j["cp_len"] = sc.cp_len;
    j["cir_len"] = sc.cir_len;
    j["shadow_sigma_db"] = sc.shadow_sigma_db;
    j["decay_span_db"] = sc.decay_span_db;
    j["n0_dbm_per_hz"] = sc.n0_dbm_per_hz;
    if (sc.jam_offset_override_samples)
        j["jam_offset_override_samples"] = *sc.jam_offset_override_samples;
    j["n_blocks"] = config.n_blocks;
    j["master_seed"] = config.master_seed;
    j["shadowing_enabled"] = config.shadowing_enabled;
    j["n_workers"] = config.n_workers;
    return j;
}

void atomic_write(const std::filesystem::path& path, const std::string& body) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << body;
        if (!out)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string format_config(const ExperimentConfig& config) {
    return config_json(config).dump(2) + "\n";
}

void emit_csv(const std::vector<BerRecord>& records, const std::filesystem::path& path) {
    if (records.empty())
        throw std::runtime_error("emit_csv: no records");
    std::vector<BerRecord> sorted = records;
    std::sort(sorted.begin(), sorted.end(), [](const BerRecord& a, const BerRecord& b) {
        if (a.sweep_point != b.sweep_point)
            return a.sweep_point < b.sweep_point;
        return static_cast<int>(a.observer) < static_cast<int>(b.observer);
    });

    std::ostringstream os;
    os << "sweep_point,observer,bit_errors,bits_total,ber,ci95_lo,ci95_hi\n";
    for (const auto& r : sorted) {
        const auto [lo, hi] = wilson_ci(r.bit_errors, r.bits_total);
        os << format_sig6(r.sweep_point) << ',' << observer_name(r.observer) << ','
           << r.bit_errors << ',' << r.bits_total << ',' << format_sig6(r.ber) << ','
           << format_sig6(lo) << ',' << format_sig6(hi) << '\n';
    }
    atomic_write(path, os.str());
}

void write_manifest(const ExperimentConfig& config, const std::string& preset,
                    const std::filesystem::path& path) {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["preset"] = preset;
    j["master_seed"] = config.master_seed;
    j["timestamp_utc"] = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::system_clock::now().time_since_epoch())
                             .count();
    j["config"] = config_json(config);
    atomic_write(path, j.dump(2) + "\n");
}

std::vector<std::filesystem::path> run_preset(const std::string& name,
                                              const ExperimentConfig& config,
                                              const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;

    const auto emit = [&](const ExperimentConfig& cfg, const std::string& stem) {
        const auto records = run_sweep(cfg);
        const auto csv = out_dir / (stem + ".csv");
        emit_csv(records, csv);
        written.push_back(csv);
    };

    if (name == "fig2") {
        ExperimentConfig cfg = config;
        cfg.axis = SweepAxis::relay_position;
        cfg.sweep_values = default_positions();
        cfg.base.pj_dbm = cfg.base.p1_dbm;  // jamming at full transmit power
        emit(cfg, "fig2");
    } else if (name == "fig3_power") {
        for (double ratio : {0.25, 0.5, 1.0}) {
            ExperimentConfig cfg = config;
            cfg.axis = SweepAxis::relay_position;
            cfg.sweep_values = default_positions();
            cfg.base.pj_dbm = cfg.base.p1_dbm + 10.0 * std::log10(ratio);
            std::ostringstream stem;
            stem << "fig3_power_pj" << format_sig6(ratio);
            emit(cfg, stem.str());
        }
    } else if (name == "fig3_cp") {
        for (double ratio : {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0}) {
            ExperimentConfig cfg = config;
            cfg.axis = SweepAxis::relay_position;
            cfg.sweep_values = default_positions();
            cfg.base.pj_dbm = cfg.base.p1_dbm;
            const std::size_t cp = static_cast<std::size_t>(
                std::llround(ratio * static_cast<double>(cfg.base.n_fft)));
            cfg.base.cp_len = cp;
            cfg.base.cir_len = cp;
            std::ostringstream stem;
            stem << "fig3_cp" << cp;
            emit(cfg, stem.str());
        }
    } else {
        throw std::runtime_error("unknown preset `" + name +
                                 "`; valid presets: fig2, fig3_power, fig3_cp");
    }

    const auto manifest = out_dir / "manifest.json";
    write_manifest(config, name, manifest);
    written.push_back(manifest);
    return written;
}

}  // namespace cpjam
