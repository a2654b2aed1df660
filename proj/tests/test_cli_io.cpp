#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpjam/cli_io.hpp"

using namespace cpjam;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("cpjam_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("empty config resolves to the urban-macro defaults") {
    const auto cfg = parse_config("");
    CHECK(cfg.base.fc_ghz == 2.0);
    CHECK(cfg.base.shadow_sigma_db == 4.0);
    CHECK(cfg.base.p1_dbm == 23.0);
    CHECK(cfg.base.p2_dbm == 23.0);
    CHECK(cfg.base.pj_dbm == 23.0);
    CHECK(cfg.base.n0_dbm_per_hz == -174.0);
    CHECK(cfg.base.d_sd_m == 1000.0);
    CHECK(cfg.base.cir_len == 32);
    CHECK(cfg.base.n_fft == 256);
    CHECK(cfg.base.sample_rate_hz == 3.84e6);
    CHECK(cfg.n_blocks == 5000);
    CHECK(cfg.shadowing_enabled);
}

TEST_CASE("config parsing accepts keys and comments") {
    const auto cfg = parse_config(
        "# comment\n"
        "n_fft = 128\n"
        "cp_len = 16\n"
        "cir_len = 16\n"
        "pj_ratio = 0.5\n"
        "n_blocks = 100\n"
        "master_seed = 77\n");
    CHECK(cfg.base.n_fft == 128);
    CHECK(cfg.base.cp_len == 16);
    CHECK(cfg.n_blocks == 100);
    CHECK(cfg.master_seed == 77);
    CHECK(cfg.base.pj_dbm == doctest::Approx(23.0 - 3.0103).epsilon(1e-4));
}

TEST_CASE("config errors name the key and line") {
    const auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config(text);
            FAIL("expected a parse error for: " << text);
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("pj_ratio = -1\n", "pj_ratio");
    expect_error("n_fft = 300\n", "power of two");
    expect_error("bogus_key = 3\n", "unknown key");
    expect_error("\n\nn_blocks = x\n", "line 3");
    expect_error("just some text\n", "key = value");
}

TEST_CASE("overrides") {
    auto cfg = parse_config("");
    RunOverrides ov;
    ov.master_seed = 9;
    ov.n_blocks = 10;
    ov.no_shadowing = true;
    ov.no_jam = true;
    ov.jam_offset_samples = 5;
    apply_overrides(cfg, ov);
    CHECK(cfg.master_seed == 9);
    CHECK(cfg.n_blocks == 10);
    CHECK_FALSE(cfg.shadowing_enabled);
    CHECK(cfg.base.pj_watts() == 0.0);
    CHECK(cfg.base.jam_offset_override_samples == 5);
}

TEST_CASE("csv emission is deterministic and parseable") {
    TempDir tmp;
    std::vector<BerRecord> records;
    records.push_back(BerRecord::from_counts(0.5, Observer::dest_mrc, 3, 1000));
    records.push_back(BerRecord::from_counts(0.1, Observer::relay_jam, 123456, 2560000));

    const auto path = tmp.path / "out.csv";
    emit_csv(records, path);
    const std::string first = slurp(path);
    emit_csv(records, path);
    CHECK(first == slurp(path));

    std::istringstream in(first);
    std::string line;
    std::getline(in, line);
    CHECK(line == "sweep_point,observer,bit_errors,bits_total,ber,ci95_lo,ci95_hi");
    std::getline(in, line);
    CHECK(line.substr(0, 14) == "0.1,relay_jam,");

    // round-trip ber within format precision
    std::getline(in, line);
    const auto pos = line.find("dest_mrc,3,1000,");
    REQUIRE(pos != std::string::npos);
    const double ber = std::stod(line.substr(pos + 16));
    CHECK(ber == doctest::Approx(0.003).epsilon(1e-6));

    CHECK_THROWS(emit_csv({}, tmp.path / "empty.csv"));
    CHECK_THROWS(emit_csv(records, tmp.path / "no_such_dir" / "x.csv"));
    CHECK_FALSE(fs::exists(tmp.path / "empty.csv"));
}

TEST_CASE("tiny preset run emits csv and manifest") {
    TempDir tmp;
    auto cfg = parse_config("n_blocks = 2\nn_fft = 64\ncp_len = 8\ncir_len = 8\n");
    cfg.master_seed = 5;
    const auto files = run_preset("fig2", cfg, tmp.path);
    REQUIRE(files.size() == 2);
    CHECK(fs::exists(tmp.path / "fig2.csv"));
    CHECK(fs::exists(tmp.path / "manifest.json"));

    // 9 positions x 4 observers + header
    std::istringstream in(slurp(tmp.path / "fig2.csv"));
    std::string line;
    int rows = -1;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 36);

    const std::string manifest = slurp(tmp.path / "manifest.json");
    CHECK(manifest.find("\"preset\": \"fig2\"") != std::string::npos);
    CHECK(manifest.find("\"master_seed\": 5") != std::string::npos);

    CHECK_THROWS(run_preset("fig9", cfg, tmp.path));
}
