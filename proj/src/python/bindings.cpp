#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpjam/cli_io.hpp"
#include "cpjam/coop_protocol.hpp"
#include "cpjam/montecarlo.hpp"

namespace py = pybind11;
using namespace cpjam;

PYBIND11_MODULE(_cpjam, m) {
    m.doc() = "OFDM cooperative-relay CP-jamming link simulator";

    // dsp_core
    m.def("qpsk_modulate", &qpsk_modulate, py::arg("bits"));
    m.def("qpsk_demodulate", &qpsk_demodulate, py::arg("symbols"));
    m.def("fft", &fft, py::arg("x"));
    m.def("ifft", &ifft, py::arg("grid"));
    m.def("add_cp", &add_cp, py::arg("x"), py::arg("cp_len"));
    m.def("remove_cp", &remove_cp, py::arg("x"), py::arg("cp_len"));

    // channel
    py::class_<ChannelRealization>(m, "ChannelRealization")
        .def(py::init<>())
        .def_readwrite("taps", &ChannelRealization::taps)
        .def_readwrite("amp_scale", &ChannelRealization::amp_scale);
    m.def(
        "pathloss_db",
        [](double d_m, double fc_ghz, double shadow_db) {
            return pathloss_db(d_m, {fc_ghz, 0.0}, shadow_db);
        },
        py::arg("d_m"), py::arg("fc_ghz"), py::arg("shadow_db") = 0.0);
    m.def(
        "draw_rayleigh_taps",
        [](std::size_t cir_len, double decay_span_db, std::uint64_t seed) {
            RandomStream rng(seed);
            return draw_rayleigh_taps(cir_len, decay_span_db, rng);
        },
        py::arg("cir_len"), py::arg("decay_span_db"), py::arg("seed"));
    m.def("apply_channel", &apply_channel, py::arg("x"), py::arg("channel"));
    m.def("cfr_from_taps", &cfr_from_taps, py::arg("channel"), py::arg("n_fft"));
    m.def("dbm_to_watts", &dbm_to_watts);
    m.def("watts_to_dbm", &watts_to_dbm);

    // coop_protocol
    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("d_sd_m", &Scenario::d_sd_m)
        .def_readwrite("d_sr_m", &Scenario::d_sr_m)
        .def_readwrite("p1_dbm", &Scenario::p1_dbm)
        .def_readwrite("p2_dbm", &Scenario::p2_dbm)
        .def_readwrite("pj_dbm", &Scenario::pj_dbm)
        .def_readwrite("fc_ghz", &Scenario::fc_ghz)
        .def_readwrite("sample_rate_hz", &Scenario::sample_rate_hz)
        .def_readwrite("n_fft", &Scenario::n_fft)
        .def_readwrite("cp_len", &Scenario::cp_len)
        .def_readwrite("cir_len", &Scenario::cir_len)
        .def_readwrite("shadow_sigma_db", &Scenario::shadow_sigma_db)
        .def_readwrite("decay_span_db", &Scenario::decay_span_db)
        .def_readwrite("n0_dbm_per_hz", &Scenario::n0_dbm_per_hz)
        .def_readwrite("jam_enabled", &Scenario::jam_enabled)
        .def_readwrite("noise_enabled", &Scenario::noise_enabled)
        .def("d_rd_m", &Scenario::d_rd_m)
        .def("validate", &Scenario::validate);
    m.def("jam_offset_samples", &jam_offset_samples, py::arg("scenario"));

    // montecarlo
    py::enum_<Observer>(m, "Observer")
        .value("relay_nojam", Observer::relay_nojam)
        .value("relay_jam", Observer::relay_jam)
        .value("dest_p1", Observer::dest_p1)
        .value("dest_mrc", Observer::dest_mrc);
    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("relay_position", SweepAxis::relay_position)
        .value("pj_ratio", SweepAxis::pj_ratio)
        .value("cp_ratio", SweepAxis::cp_ratio);
    py::class_<BerRecord>(m, "BerRecord")
        .def_readonly("sweep_point", &BerRecord::sweep_point)
        .def_readonly("observer", &BerRecord::observer)
        .def_readonly("bit_errors", &BerRecord::bit_errors)
        .def_readonly("bits_total", &BerRecord::bits_total)
        .def_readonly("ber", &BerRecord::ber)
        .def_readonly("ci95_halfwidth", &BerRecord::ci95_halfwidth);
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("base", &ExperimentConfig::base)
        .def_readwrite("axis", &ExperimentConfig::axis)
        .def_readwrite("sweep_values", &ExperimentConfig::sweep_values)
        .def_readwrite("n_blocks", &ExperimentConfig::n_blocks)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("shadowing_enabled", &ExperimentConfig::shadowing_enabled)
        .def_readwrite("n_workers", &ExperimentConfig::n_workers);
    m.def("run_sweep", &run_sweep, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("wilson_ci", &wilson_ci, py::arg("errors"), py::arg("total"));
    m.def("derive_trial_seed", &derive_trial_seed, py::arg("master_seed"),
          py::arg("sweep_index"), py::arg("trial_index"), py::arg("tag"));
    py::enum_<StreamTag>(m, "StreamTag")
        .value("data", StreamTag::kData)
        .value("chan_sd", StreamTag::kChanSd)
        .value("chan_sr", StreamTag::kChanSr)
        .value("chan_rd", StreamTag::kChanRd)
        .value("jam", StreamTag::kJam);

    // cli_io
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("format_config", &format_config, py::arg("config"));
}
