#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cam/common.hpp"

namespace cam {

struct ScenarioConfig {
    access_t method = access_t::tdma;
    std::string modulation = "QPSK";
    int n_total = 4;       // users (or spreading users for cdma)
    int j = 500;           // frame length in samples
    int f = 200;           // frames to collect
    double snr_db = 10.0;  // average received SNR; infinity means noiseless
    double load = 1.0;     // slot occupancy probability / packet arrival rate
    int slot_len = 500;
    int packet_len = 1000;
    int n_sc = 64;  // multicarrier size
    int n_p = 4;    // prefix samples per multicarrier symbol
    int l_c = 16;   // spreading factor
    bool walsh_codes = false;
    double kappa = 2.0;
    double p_c_given_t = 0.05;
    std::uint64_t seed = 1;
};

// per-transmitter baseband streams before the channel; composite methods
// (ofdma, cdma) emit a single unit-power stream
struct UserSignals {
    std::vector<std::vector<cplx>> streams;
    std::vector<std::vector<std::uint8_t>> activity;
};

UserSignals gen_tdma(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng);
UserSignals gen_ofdma(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng);
UserSignals gen_cdma(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng);
UserSignals gen_contention(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng);

// row of the Sylvester-ordered Hadamard matrix as +-1 entries
std::vector<int> walsh_code(int l_c, int row);

struct ChannelOutput {
    std::vector<cplx> r;
    double sigma2 = 0.0;
    std::vector<cplx> gains;  // one Rayleigh coefficient per input stream
};

ChannelOutput apply_channel(const UserSignals& u, double snr_db, std::mt19937_64& rng);

struct Scenario {
    std::vector<cplx> r;
    double sigma2 = 0.0;
    std::string true_label;  // M1..M15 or "contention"
    access_t method = access_t::tdma;
    int target_frames = 0;
};

Scenario synthesize_scenario(const ScenarioConfig& cfg);

// class label implied by a scenario configuration
std::string scenario_label(const ScenarioConfig& cfg);

// capture files: <prefix>.iq holds float32 little-endian interleaved I/Q,
// <prefix>.json holds the metadata sidecar
void write_capture(const std::string& prefix, const Scenario& s, const ScenarioConfig& cfg);

struct Capture {
    std::vector<cplx> r;
    double sigma2 = 0.0;
    double snr_db = 0.0;
    int j = 500;
    int f = 200;
    int n_total = 4;
    std::string method;
    std::string modulation;
    std::string label;
};

Capture read_capture(const std::string& path);

double sigma2_from_snr_db(double snr_db);

}  // namespace cam
