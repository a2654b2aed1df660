#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpjam/coop_protocol.hpp"

namespace cpjam {

enum class Observer { relay_nojam, relay_jam, dest_p1, dest_mrc };

const char* observer_name(Observer obs);

enum class SweepAxis { relay_position, pj_ratio, cp_ratio };

struct ExperimentConfig {
    Scenario base;
    SweepAxis axis = SweepAxis::relay_position;
    std::vector<double> sweep_values;
    std::size_t n_blocks = 5000;
    std::uint64_t master_seed = 1;
    bool shadowing_enabled = true;
    unsigned n_workers = 1;

    void validate() const;
};

struct BerRecord {
    double sweep_point;
    Observer observer;
    std::uint64_t bit_errors;
    std::uint64_t bits_total;
    double ber;
    double ci95_halfwidth;  // normal approximation

    static BerRecord from_counts(double sweep_point, Observer obs, std::uint64_t errors,
                                 std::uint64_t total);
};

// Sub-stream tags for derive_trial_seed; jam-on/jam-off arms share every
// stream except kJam, which only the jamming waveform consumes.
enum class StreamTag : std::uint64_t {
    kData = 1,
    kShadowSd,
    kShadowSr,
    kShadowRd,
    kChanSd,
    kChanSr,
    kChanRd,
    kNoiseDestP1,
    kNoiseRelay,
    kNoiseDestP2,
    kJam,
};

// Counter-based mixing of (master, sweep, trial, tag); distinct inputs give
// distinct seeds with overwhelming probability.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::size_t sweep_index,
                                std::size_t trial_index, StreamTag tag);

// Scenario at one sweep point (position fraction, pj ratio, or cp ratio).
Scenario scenario_at(const ExperimentConfig& config, double sweep_value);

struct TrialPair {
    TrialObservation jam_on;
    TrialObservation jam_off;
};

// One paired trial under common random numbers: both arms see identical data,
// channels, shadowing and noise; only jam_enabled differs.
TrialPair run_trial(const ExperimentConfig& config, std::size_t sweep_index,
                    std::size_t trial_index);

// n_blocks paired trials per sweep point, reduced to four observer records each.
std::vector<BerRecord> run_sweep(const ExperimentConfig& config);

// 95% Wilson score interval for errors/total.
std::pair<double, double> wilson_ci(std::uint64_t errors, std::uint64_t total);

}  // namespace cpjam
