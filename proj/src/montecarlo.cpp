#include "cpjam/montecarlo.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cpjam {

const char* observer_name(Observer obs) {
    switch (obs) {
        case Observer::relay_nojam: return "relay_nojam";
        case Observer::relay_jam: return "relay_jam";
        case Observer::dest_p1: return "dest_p1";
        case Observer::dest_mrc: return "dest_mrc";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (n_blocks == 0)
        throw std::invalid_argument("ExperimentConfig: n_blocks must be >= 1");
    if (sweep_values.empty())
        throw std::invalid_argument("ExperimentConfig: sweep axis has no values");
    for (double v : sweep_values) {
        switch (axis) {
            case SweepAxis::relay_position:
                if (!(v > 0.0) || !(v < 1.0))
                    throw std::invalid_argument(
                        "ExperimentConfig: position fractions must lie in (0,1)");
                break;
            case SweepAxis::pj_ratio:
                if (v < 0.0)
                    throw std::invalid_argument("ExperimentConfig: pj ratios must be >= 0");
                break;
            case SweepAxis::cp_ratio: {
                const double len = v * static_cast<double>(base.n_fft);
                if (len <= 0.0 || len != std::floor(len))
                    throw std::invalid_argument(
                        "ExperimentConfig: cp ratio must give an integral cp length");
                break;
            }
        }
    }
    // full scenario checks happen per sweep point in scenario_at
}

BerRecord BerRecord::from_counts(double sweep_point, Observer obs, std::uint64_t errors,
                                 std::uint64_t total) {
    const double ber = static_cast<double>(errors) / static_cast<double>(total);
    const double ci =
        1.96 * std::sqrt(ber * (1.0 - ber) / static_cast<double>(total));
    return {sweep_point, obs, errors, total, ber, ci};
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::size_t sweep_index,
                                std::size_t trial_index, StreamTag tag) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ (0x8000000000000000ULL | sweep_index));
    h = splitmix64(h ^ (0x4000000000000000ULL | trial_index));
    h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
    return h;
}

Scenario scenario_at(const ExperimentConfig& config, double sweep_value) {
    Scenario sc = config.base;
    switch (config.axis) {
        case SweepAxis::relay_position:
            sc.d_sr_m = sweep_value * sc.d_sd_m;
            break;
        case SweepAxis::pj_ratio:
            // ratio 0 maps to -inf dBm, an exactly silent jammer
            sc.pj_dbm = sweep_value > 0.0
                            ? sc.p1_dbm + 10.0 * std::log10(sweep_value)
                            : -std::numeric_limits<double>::infinity();
            break;
        case SweepAxis::cp_ratio: {
            const double len = sweep_value * static_cast<double>(sc.n_fft);
            if (len <= 0.0 || len != std::floor(len))
                throw std::invalid_argument("cp ratio must give an integral cp length");
            sc.cp_len = static_cast<std::size_t>(len);
            sc.cir_len = sc.cp_len;  // CP kept equal to the CIR itself
            break;
        }
    }
    if (!config.shadowing_enabled)
        sc.shadow_sigma_db = 0.0;
    sc.validate();
    return sc;
}

namespace {

ChannelRealization draw_link(const Scenario& sc, double d_m, std::uint64_t chan_seed,
                             std::uint64_t shadow_seed) {
    RandomStream chan_rng(chan_seed);
    RandomStream shadow_rng(shadow_seed);
    const double shadow_db =
        sc.shadow_sigma_db > 0.0 ? shadow_rng.gauss() * sc.shadow_sigma_db : 0.0;
    const double pl_db =
        pathloss_db(d_m, {sc.fc_ghz, sc.shadow_sigma_db}, shadow_db);
    ChannelRealization ch;
    ch.taps = draw_rayleigh_taps(sc.cir_len, sc.decay_span_db, chan_rng);
    ch.amp_scale = std::pow(10.0, -pl_db / 20.0);
    return ch;
}

BitVec draw_bits(std::size_t count, RandomStream& rng) {
    BitVec bits(count);
    for (auto& b : bits)
        b = rng.uniform01() < 0.5 ? 0 : 1;
    return bits;
}

}  // namespace

TrialPair run_trial(const ExperimentConfig& config, std::size_t sweep_index,
                    std::size_t trial_index) {
    const Scenario sc = scenario_at(config, config.sweep_values.at(sweep_index));

    const auto seed = [&](StreamTag tag) {
        return derive_trial_seed(config.master_seed, sweep_index, trial_index, tag);
    };

    TrialChannels channels;
    channels.ch_sd = draw_link(sc, sc.d_sd_m, seed(StreamTag::kChanSd), seed(StreamTag::kShadowSd));
    channels.ch_sr = draw_link(sc, sc.d_sr_m, seed(StreamTag::kChanSr), seed(StreamTag::kShadowSr));
    channels.ch_rd =
        draw_link(sc, sc.d_rd_m(), seed(StreamTag::kChanRd), seed(StreamTag::kShadowRd));

    RandomStream data_rng(seed(StreamTag::kData));
    const BitVec bits = draw_bits(2 * sc.n_fft, data_rng);

    const auto make_rngs = [&] {
        return TrialRngs{RandomStream(seed(StreamTag::kData)),
                         RandomStream(seed(StreamTag::kNoiseDestP1)),
                         RandomStream(seed(StreamTag::kNoiseRelay)),
                         RandomStream(seed(StreamTag::kNoiseDestP2)),
                         RandomStream(seed(StreamTag::kJam))};
    };

    TrialPair pair;
    {
        Scenario on = sc;
        on.jam_enabled = true;
        TrialRngs rngs = make_rngs();
        pair.jam_on = run_block(bits, on, channels, rngs);
    }
    {
        Scenario off = sc;
        off.jam_enabled = false;
        TrialRngs rngs = make_rngs();
        pair.jam_off = run_block(bits, off, channels, rngs);
    }
    return pair;
}

namespace {

std::uint64_t count_errors(const BitVec& a, const BitVec& b) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        n += a[i] != b[i];
    return n;
}

struct PointCounts {
    std::array<std::uint64_t, 4> errors{0, 0, 0, 0};

    void add(const TrialPair& pair) {
        const BitVec& tx = pair.jam_on.bits_tx;
        errors[0] += count_errors(tx, pair.jam_off.bits_relay_hat);  // relay_nojam
        errors[1] += count_errors(tx, pair.jam_on.bits_relay_hat);   // relay_jam
        errors[2] += count_errors(tx, pair.jam_off.bits_dest_p1_hat);
        errors[3] += count_errors(tx, pair.jam_on.bits_dest_mrc_hat);
    }

    void merge(const PointCounts& other) {
        for (std::size_t i = 0; i < errors.size(); ++i)
            errors[i] += other.errors[i];
    }
};

}  // namespace

std::vector<BerRecord> run_sweep(const ExperimentConfig& config) {
    config.validate();
    for (double v : config.sweep_values)
        (void)scenario_at(config, v);  // reject invalid points before any trial

    const unsigned workers = std::max(1u, config.n_workers);
    std::vector<BerRecord> records;
    for (std::size_t si = 0; si < config.sweep_values.size(); ++si) {
        PointCounts counts;
        if (workers == 1) {
            for (std::size_t ti = 0; ti < config.n_blocks; ++ti)
                counts.add(run_trial(config, si, ti));
        } else {
            std::vector<PointCounts> partial(workers);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t ti = w; ti < config.n_blocks; ti += workers)
                        partial[w].add(run_trial(config, si, ti));
                });
            }
            for (auto& t : pool)
                t.join();
            for (const auto& p : partial)
                counts.merge(p);
        }

        const Scenario sc = scenario_at(config, config.sweep_values[si]);
        const std::uint64_t total = config.n_blocks * 2 * sc.n_fft;
        const double point = config.sweep_values[si];
        records.push_back(BerRecord::from_counts(point, Observer::relay_nojam, counts.errors[0], total));
        records.push_back(BerRecord::from_counts(point, Observer::relay_jam, counts.errors[1], total));
        records.push_back(BerRecord::from_counts(point, Observer::dest_p1, counts.errors[2], total));
        records.push_back(BerRecord::from_counts(point, Observer::dest_mrc, counts.errors[3], total));
    }
    return records;
}

std::pair<double, double> wilson_ci(std::uint64_t errors, std::uint64_t total) {
    if (total == 0)
        throw std::invalid_argument("wilson_ci: total must be >= 1");
    if (errors > total)
        throw std::invalid_argument("wilson_ci: errors exceed total");
    const double z = 1.96;
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace cpjam
