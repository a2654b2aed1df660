#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cpjam/cli_io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cpjam: OFDM cooperative-relay CP-jamming link simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    cpjam::RunOverrides overrides;
    std::uint64_t seed_flag = 0;
    std::size_t blocks_flag = 0;
    double sample_rate_flag = 0.0;
    std::size_t jam_offset_flag = 0;
    unsigned workers_flag = 0;

    auto* run = app.add_subcommand("run", "run an experiment preset");
    run->add_option("--preset", preset, "fig2 | fig3_power | fig3_cp")->required();
    run->add_option("--config", config_path, "key = value config file");
    run->add_option("--out", out_dir, "output directory");
    auto* seed_opt = run->add_option("--seed", seed_flag, "master seed");
    auto* blocks_opt = run->add_option("--blocks", blocks_flag, "OFDM blocks per sweep point");
    auto* rate_opt = run->add_option("--sample-rate-hz", sample_rate_flag, "baseband sample rate");
    auto* offset_opt =
        run->add_option("--jam-offset-samples", jam_offset_flag, "force the jamming offset");
    auto* workers_opt = run->add_option("--workers", workers_flag, "trial worker threads");
    run->add_flag("--no-shadowing", overrides.no_shadowing, "disable log-normal shadowing");
    run->add_flag("--no-jam", overrides.no_jam, "zero-power jammer");

    auto* validate = app.add_subcommand("validate", "parse a config and print the resolved values");
    validate->add_option("--config", config_path, "key = value config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        std::string text;
        if (!config_path.empty())
            text = read_file(config_path);
        cpjam::ExperimentConfig config = cpjam::parse_config(text);

        if (validate->parsed()) {
            std::cout << cpjam::format_config(config);
            return 0;
        }

        if (const char* env = std::getenv("CPJAM_SEED"); env != nullptr)
            config.master_seed = std::strtoull(env, nullptr, 10);
        if (seed_opt->count())
            overrides.master_seed = seed_flag;
        if (blocks_opt->count())
            overrides.n_blocks = blocks_flag;
        if (rate_opt->count())
            overrides.sample_rate_hz = sample_rate_flag;
        if (offset_opt->count())
            overrides.jam_offset_samples = jam_offset_flag;
        if (workers_opt->count())
            overrides.n_workers = workers_flag;
        cpjam::apply_overrides(config, overrides);

        const auto files = cpjam::run_preset(preset, config, out_dir);
        for (const auto& f : files)
            std::cout << f.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "cpjam: " << e.what() << '\n';
        return 1;
    }
}
