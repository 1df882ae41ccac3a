#include "cam/netsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "cam/constellations.hpp"

namespace cam {

double sigma2_from_snr_db(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    if (snr_db >= 1e6) return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

namespace {

struct SymbolSource {
    std::vector<cplx> pts;
    std::uniform_int_distribution<size_t> pick;

    explicit SymbolSource(const std::string& mod)
        : pts(build_constellation(mod).points), pick(0, pts.size() - 1) {}
    cplx operator()(std::mt19937_64& rng) { return pts[pick(rng)]; }
};

void check_common(const ScenarioConfig& cfg) {
    if (cfg.n_total < 1) throw config_error("scenario: n_total must be positive");
    if (cfg.j < 4) throw config_error("scenario: j too small");
    if (cfg.f < 2) throw config_error("scenario: f must be at least 2");
    if (!(cfg.load > 0.0) || cfg.load > 16.0) throw config_error("scenario: load out of range");
    if (cfg.kappa <= 1.0) throw config_error("scenario: kappa must exceed 1");
}

// in-place radix-2 transform, sign=+1 gives the inverse kernel exp(+j2pi/n)
void fft_pow2(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    for (size_t i = 1, rev = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; rev & bit; bit >>= 1) rev ^= bit;
        rev ^= bit;
        if (i < rev) std::swap(a[i], a[rev]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * std::numbers::pi / double(len);
        cplx w0(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= w0;
            }
        }
    }
}

std::vector<cplx> idft(const std::vector<cplx>& x) {
    const size_t n = x.size();
    if (std::has_single_bit(n)) {
        auto a = x;
        fft_pow2(a, +1);
        return a;
    }
    std::vector<cplx> out(n, 0.0);
    for (size_t t = 0; t < n; ++t)
        for (size_t k = 0; k < n; ++k) {
            double ang = 2.0 * std::numbers::pi * double(k * t % n) / double(n);
            out[t] += x[k] * cplx(std::cos(ang), std::sin(ang));
        }
    return out;
}

}  // namespace

UserSignals gen_tdma(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng) {
    check_common(cfg);
    if (cfg.slot_len < 4) throw config_error("gen_tdma: slot_len too small");
    if (cfg.load > 1.0) throw config_error("gen_tdma: load must be at most 1");

    SymbolSource sym(cfg.modulation);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    UserSignals out;
    out.streams.assign(size_t(cfg.n_total), std::vector<cplx>(size_t(n_samples), 0.0));
    out.activity.assign(size_t(cfg.n_total), std::vector<std::uint8_t>(size_t(n_samples), 0));

    const int n_slots = (n_samples + cfg.slot_len - 1) / cfg.slot_len;
    for (int s = 0; s < n_slots; ++s) {
        bool occupied = u01(rng) < cfg.load;
        if (!occupied) continue;
        int owner = s % cfg.n_total;  // round-robin slot ownership
        int lo = s * cfg.slot_len, hi = std::min(n_samples, lo + cfg.slot_len);
        for (int t = lo; t < hi; ++t) {
            out.streams[size_t(owner)][size_t(t)] = sym(rng);
            out.activity[size_t(owner)][size_t(t)] = 1;
        }
    }
    return out;
}

UserSignals gen_ofdma(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng) {
    check_common(cfg);
    if (cfg.n_sc < 2 || cfg.n_p < 0 || cfg.n_p >= cfg.n_sc)
        throw config_error("gen_ofdma: bad n_sc/n_p");
    if (cfg.n_sc % cfg.n_total != 0)
        throw config_error("gen_ofdma: n_total must divide n_sc");

    SymbolSource sym(cfg.modulation);
    const double scale = 1.0 / std::sqrt(double(cfg.n_sc));

    UserSignals out;
    out.streams.assign(1, std::vector<cplx>());
    out.streams[0].reserve(size_t(n_samples) + size_t(cfg.n_sc + cfg.n_p));
    std::vector<cplx> freq(size_t(cfg.n_sc));
    while (int(out.streams[0].size()) < n_samples) {
        for (auto& x : freq) x = sym(rng);  // all subcarriers loaded: full allocation
        auto time = idft(freq);
        for (auto& v : time) v *= scale;
        for (int t = cfg.n_sc - cfg.n_p; t < cfg.n_sc; ++t) out.streams[0].push_back(time[size_t(t)]);
        for (auto v : time) out.streams[0].push_back(v);
    }
    out.streams[0].resize(size_t(n_samples));
    out.activity.assign(1, std::vector<std::uint8_t>(size_t(n_samples), 1));
    return out;
}

std::vector<int> walsh_code(int l_c, int row) {
    if (l_c < 1 || !std::has_single_bit(unsigned(l_c)))
        throw argument_error("walsh_code: length must be a power of two");
    if (row < 0 || row >= l_c) throw argument_error("walsh_code: row out of range");
    std::vector<int> code(size_t(l_c), 0);
    for (int c = 0; c < l_c; ++c)
        code[size_t(c)] = (std::popcount(unsigned(row) & unsigned(c)) & 1) ? -1 : 1;
    return code;
}

UserSignals gen_cdma(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng) {
    check_common(cfg);
    if (cfg.l_c < 2) throw config_error("gen_cdma: l_c too small");
    if (cfg.walsh_codes) {
        if (!std::has_single_bit(unsigned(cfg.l_c)))
            throw config_error("gen_cdma: walsh codes need a power-of-two l_c");
        if (cfg.n_total > cfg.l_c) throw config_error("gen_cdma: more users than walsh rows");
    }

    SymbolSource sym(cfg.modulation);
    std::vector<std::vector<int>> codes(size_t(cfg.n_total));
    for (int u = 0; u < cfg.n_total; ++u) {
        if (cfg.walsh_codes) {
            codes[size_t(u)] = walsh_code(cfg.l_c, u);
        } else {
            codes[size_t(u)].resize(size_t(cfg.l_c));
            for (auto& chip : codes[size_t(u)]) chip = (rng() & 1) ? 1 : -1;
        }
    }

    const double scale = 1.0 / std::sqrt(double(cfg.n_total));
    UserSignals out;
    out.streams.assign(1, std::vector<cplx>(size_t(n_samples), 0.0));
    out.activity.assign(1, std::vector<std::uint8_t>(size_t(n_samples), 1));

    std::vector<cplx> data(size_t(cfg.n_total));
    for (int t = 0; t < n_samples; ++t) {
        int chip = t % cfg.l_c;
        if (chip == 0)
            for (auto& d : data) d = sym(rng);  // new symbol for every user
        cplx acc = 0.0;
        for (int u = 0; u < cfg.n_total; ++u) acc += double(codes[size_t(u)][size_t(chip)]) * data[size_t(u)];
        out.streams[0][size_t(t)] = acc * scale;
    }
    return out;
}

UserSignals gen_contention(const ScenarioConfig& cfg, int n_samples, std::mt19937_64& rng) {
    check_common(cfg);
    if (cfg.packet_len < 4) throw config_error("gen_contention: packet_len too small");

    SymbolSource sym(cfg.modulation);
    std::exponential_distribution<double> gap(cfg.load / double(cfg.packet_len));
    std::uniform_int_distribution<int> pick_user(0, cfg.n_total - 1);

    UserSignals out;
    out.streams.assign(size_t(cfg.n_total), std::vector<cplx>(size_t(n_samples), 0.0));
    out.activity.assign(size_t(cfg.n_total), std::vector<std::uint8_t>(size_t(n_samples), 0));

    double pos = gap(rng);
    while (pos < double(n_samples)) {
        int start = int(pos);
        int user = pick_user(rng);
        int hi = std::min(n_samples, start + cfg.packet_len);
        for (int t = start; t < hi; ++t) {
            out.streams[size_t(user)][size_t(t)] += sym(rng);  // overlap with own tail just adds
            out.activity[size_t(user)][size_t(t)] = 1;
        }
        pos += gap(rng);
    }
    return out;
}

ChannelOutput apply_channel(const UserSignals& u, double snr_db, std::mt19937_64& rng) {
    if (u.streams.empty()) throw argument_error("apply_channel: no streams");
    const size_t n = u.streams[0].size();
    for (const auto& s : u.streams)
        if (s.size() != n) throw argument_error("apply_channel: stream length mismatch");

    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    ChannelOutput out;
    out.sigma2 = sigma2_from_snr_db(snr_db);
    out.gains.reserve(u.streams.size());
    for (size_t s = 0; s < u.streams.size(); ++s) out.gains.emplace_back(g(rng), g(rng));

    out.r.assign(n, 0.0);
    for (size_t s = 0; s < u.streams.size(); ++s) {
        cplx h = out.gains[s];
        const auto& x = u.streams[s];
        for (size_t t = 0; t < n; ++t) out.r[t] += h * x[t];
    }
    if (out.sigma2 > 0.0) {
        std::normal_distribution<double> w(0.0, std::sqrt(out.sigma2 * 0.5));
        for (size_t t = 0; t < n; ++t) out.r[t] += cplx(w(rng), w(rng));
    }
    return out;
}

std::string scenario_label(const ScenarioConfig& cfg) {
    const std::string& mod = cfg.modulation;
    switch (cfg.method) {
        case access_t::tdma: {
            if (mod == "BPSK") return "M1";
            if (mod.size() >= 3 && mod.substr(mod.size() - 3) == "PSK") return "M2";
            if (mod == "4-PAM") return "M3";
            if (mod == "8-PAM") return "M4";
            if (mod == "16-PAM") return "M5";
            if (mod == "32-PAM") return "M6";
            if (mod == "64-PAM") return "M7";
            if (mod == "16-QAM") return "M8";
            if (mod == "64-QAM") return "M9";
            if (mod == "256-QAM") return "M10";
            break;
        }
        case access_t::ofdma: {
            if (mod == "QPSK" || mod == "4-QAM") return "M11";
            if (mod == "16-QAM") return "M12";
            break;
        }
        case access_t::cdma: {
            if (mod == "BPSK") return "M13";
            if (mod == "QPSK" || mod == "4-QAM") return "M14";
            if (mod == "16-QAM") return "M15";
            break;
        }
        case access_t::contention:
            return "contention";
    }
    throw config_error("scenario_label: no class for " + to_string(cfg.method) + "/" + mod);
}

Scenario synthesize_scenario(const ScenarioConfig& cfg) {
    check_common(cfg);
    const double sigma2 = sigma2_from_snr_db(cfg.snr_db);
    const double fade_keep = std::exp(-(cfg.kappa - 1.0) * sigma2);

    double retention = 1.0;
    switch (cfg.method) {
        case access_t::tdma: retention = cfg.load * fade_keep; break;
        case access_t::ofdma:
        case access_t::cdma: retention = fade_keep; break;
        case access_t::contention:
            retention = (1.0 - std::exp(-cfg.load)) * fade_keep;
            break;
    }
    retention = std::max(retention, 0.02);

    long need = long(std::ceil(double(cfg.f) * cfg.j / retention * 1.2)) + 2L * cfg.j;
    if (cfg.method == access_t::tdma)
        need = (need + cfg.slot_len - 1) / cfg.slot_len * cfg.slot_len;
    need = std::min(need, long(1) << 24);
    const int n_samples = int(need);

    std::mt19937_64 rng_gen(derive_seed(cfg.seed, 1));
    std::mt19937_64 rng_chan(derive_seed(cfg.seed, 2));

    UserSignals u;
    switch (cfg.method) {
        case access_t::tdma: u = gen_tdma(cfg, n_samples, rng_gen); break;
        case access_t::ofdma: u = gen_ofdma(cfg, n_samples, rng_gen); break;
        case access_t::cdma: u = gen_cdma(cfg, n_samples, rng_gen); break;
        case access_t::contention: u = gen_contention(cfg, n_samples, rng_gen); break;
    }
    auto ch = apply_channel(u, cfg.snr_db, rng_chan);

    Scenario s;
    s.r = std::move(ch.r);
    s.sigma2 = ch.sigma2;
    s.true_label = scenario_label(cfg);
    s.method = cfg.method;
    s.target_frames = cfg.f;
    return s;
}

void write_capture(const std::string& prefix, const Scenario& s, const ScenarioConfig& cfg) {
    std::ofstream iq(prefix + ".iq", std::ios::binary);
    if (!iq) throw io_error("write_capture: cannot open " + prefix + ".iq");
    std::vector<float> buf;
    buf.reserve(s.r.size() * 2);
    for (auto v : s.r) {
        buf.push_back(float(v.real()));
        buf.push_back(float(v.imag()));
    }
    iq.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size() * sizeof(float)));
    if (!iq) throw io_error("write_capture: short write on " + prefix + ".iq");

    nlohmann::json meta{{"format", "cf32le"},
                        {"samples", s.r.size()},
                        {"j", cfg.j},
                        {"f", cfg.f},
                        {"snr_db", std::isinf(cfg.snr_db) ? 1e9 : cfg.snr_db},
                        {"sigma2", s.sigma2},
                        {"method", to_string(cfg.method)},
                        {"modulation", cfg.modulation},
                        {"n_total", cfg.n_total},
                        {"label", s.true_label},
                        {"seed", cfg.seed}};
    std::ofstream js(prefix + ".json");
    if (!js) throw io_error("write_capture: cannot open " + prefix + ".json");
    js << meta.dump(2) << "\n";
}

Capture read_capture(const std::string& path) {
    std::string prefix = path;
    if (prefix.size() > 3 && prefix.substr(prefix.size() - 3) == ".iq")
        prefix = prefix.substr(0, prefix.size() - 3);

    std::ifstream js(prefix + ".json");
    if (!js) throw io_error("read_capture: missing sidecar " + prefix + ".json");
    nlohmann::json meta;
    try {
        js >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("read_capture: bad sidecar: ") + e.what());
    }

    Capture cap;
    try {
        if (meta.at("format").get<std::string>() != "cf32le")
            throw io_error("read_capture: unsupported format");
        cap.sigma2 = meta.at("sigma2").get<double>();
        cap.snr_db = meta.value("snr_db", 0.0);
        cap.j = meta.at("j").get<int>();
        cap.f = meta.at("f").get<int>();
        cap.n_total = meta.value("n_total", 4);
        cap.method = meta.value("method", std::string());
        cap.modulation = meta.value("modulation", std::string());
        cap.label = meta.value("label", std::string());
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("read_capture: sidecar fields: ") + e.what());
    }

    std::ifstream iq(prefix + ".iq", std::ios::binary | std::ios::ate);
    if (!iq) throw io_error("read_capture: missing " + prefix + ".iq");
    auto bytes = iq.tellg();
    iq.seekg(0);
    if (bytes % (2 * sizeof(float)) != 0) throw io_error("read_capture: truncated iq file");
    std::vector<float> buf(size_t(bytes) / sizeof(float));
    iq.read(reinterpret_cast<char*>(buf.data()), bytes);
    if (!iq) throw io_error("read_capture: short read");
    cap.r.reserve(buf.size() / 2);
    for (size_t i = 0; i + 1 < buf.size(); i += 2) cap.r.emplace_back(buf[i], buf[i + 1]);
    return cap;
}

}  // namespace cam
