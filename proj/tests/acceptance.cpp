// Acceptance gates for the access-method classifier. Each gate prints exactly
// one line ("criterion N: PASS - ..." or "criterion N: FAIL - ...") and the
// binary exits nonzero if any gate it ran failed. With no arguments all eight
// run in order; otherwise each argument names one gate (1..8).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cam/class_stats.hpp"
#include "cam/classifier.hpp"
#include "cam/common.hpp"
#include "cam/constellations.hpp"
#include "cam/estimation.hpp"
#include "cam/harness.hpp"
#include "cam/netsim.hpp"

using namespace cam;

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double var_of(const std::vector<double>& v) {
    double m = mean_of(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / double(v.size() - 1);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
    return buf;
}

CumulantSet signal_cumulants(const std::string& name) {
    return moments_to_cumulants(alphabet_moments(build_constellation(name)));
}

// noiseless frame statistic normalized by the true (unit) power: the raw
// centered estimate, no per-frame power division
std::vector<double> frame_values_true_power(const std::vector<cplx>& stream, int j) {
    std::vector<double> out;
    out.reserve(stream.size() / size_t(j));
    for (size_t off = 0; off + size_t(j) <= stream.size(); off += size_t(j)) {
        std::vector<cplx> frame(stream.begin() + long(off), stream.begin() + long(off + size_t(j)));
        out.push_back(estimate_c42_frame(center_signal(frame)).c42);
    }
    return out;
}

std::vector<cplx> draw_symbols(const std::string& mod, int n, std::uint64_t seed) {
    auto pts = build_constellation(mod).points;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
    std::vector<cplx> out(size_t(n), cplx(0.0));
    for (auto& v : out) v = pts[pick(rng)];
    return out;
}

// quadrature oracle for the chi-square CDF, independent of the quantile
// implementation: after t = u^2 the integrand is smooth down to dof = 1
double chi2_cdf_oracle(double x, int dof) {
    if (x <= 0.0) return 0.0;
    const double k = double(dof);
    const double lognorm = std::log(2.0) - 0.5 * k * std::log(2.0) - std::lgamma(0.5 * k);
    const double b = std::sqrt(x);
    const int n = 40000;
    const double h = b / n;
    auto f = [&](double u) {
        if (u <= 0.0) return dof == 1 ? std::exp(lognorm) : 0.0;
        return std::exp(lognorm + (k - 1.0) * std::log(u) - 0.5 * u * u);
    };
    double s = f(0.0) + f(b);
    for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

ScenarioConfig make_cfg(access_t method, const std::string& mod, int n_total, double snr_db,
                        double load, int f) {
    ScenarioConfig cfg;
    cfg.method = method;
    cfg.modulation = mod;
    cfg.n_total = n_total;
    cfg.j = 500;
    cfg.f = f;
    cfg.snr_db = snr_db;
    cfg.load = load;
    cfg.slot_len = 500;
    cfg.packet_len = 1000;
    cfg.l_c = 16;
    return cfg;
}

double label_accuracy(const TrialStats& st) {
    return st.n_decided > 0 ? double(st.n_correct_label) / st.n_decided : 0.0;
}

// the M1..M10 slotted single-carrier alphabets, in class order
const std::vector<std::string> kTdmaMods = {"BPSK",   "QPSK",   "4-PAM",  "8-PAM",   "16-PAM",
                                            "32-PAM", "64-PAM", "16-QAM", "64-QAM", "256-QAM"};

// method-level accuracy averaged over the ten slotted classes
double tdma_class_average(double snr_db, int trials_per_class, std::uint64_t seed_base,
                          std::vector<double>* per_class = nullptr) {
    std::vector<double> acc;
    for (size_t i = 0; i < kTdmaMods.size(); ++i) {
        auto cfg = make_cfg(access_t::tdma, kTdmaMods[i], 4, snr_db, 1.0, 200);
        auto st = run_trials(cfg, trials_per_class, derive_seed(seed_base, i), 1);
        acc.push_back(st.p_correct);
    }
    if (per_class) *per_class = acc;
    return mean_of(acc);
}

double contention_detection(double snr_db, double load, int trials, std::uint64_t seed) {
    auto cfg = make_cfg(access_t::contention, "QPSK", 4, snr_db, load, 200);
    return run_trials(cfg, trials, seed, 1).p_correct;
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    struct Expect {
        const char* name;
        double value;
        double tol;  // two rows are quoted with a half-ulp rounding slip
    };
    const Expect expected[] = {
        {"BPSK", -2.0000, 5e-5},      {"PAM(4)", -1.3600, 5e-5},   {"PAM(8)", -1.2381, 5e-5},
        {"PAM(16)", -1.2094, 5e-5},   {"PAM(32)", -1.2024, 1.3e-4}, {"PAM(64)", -1.2006, 5e-5},
        {"PAM(inf)", -1.2000, 5e-5},  {"PSK(>=4)", -1.0000, 5e-5}, {"V32", -0.6900, 5e-5},
        {"V29", -0.5816, 5e-5},       {"QAM(4,4)", -0.6800, 5e-5}, {"QAM(8,8)", -0.6191, 1.3e-4},
        {"QAM(16,16)", -0.6047, 5e-5}, {"QAM(32,32)", -0.6012, 5e-5}, {"QAM(inf)", -0.6000, 5e-5},
        {"BPSK-OFDM", 0.0000, 5e-5},  {"QPSK-OFDM", 0.0000, 5e-5},
    };

    auto rows = reference_c42_table();
    int matched = 0;
    double worst = 0.0;
    std::string bad;
    for (const auto& e : expected) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const ReferenceRow& r) { return r.name == e.name; });
        if (it == rows.end()) {
            bad += std::string(" missing:") + e.name;
            continue;
        }
        double d = std::abs(it->c42 - e.value);
        worst = std::max(worst, d);
        if (d <= e.tol)
            ++matched;
        else
            bad += std::string(" ") + e.name + fmt(":%+.6f", it->c42);
    }

    struct VarAnchor {
        const char* name;
        bool real_axis;
        double value;
    };
    const VarAnchor anchors[] = {{"BPSK", true, 0.00},
                                 {"4-PAM", true, 10.24},
                                 {"QPSK", false, 0.00},
                                 {"16-QAM", false, 1.38},
                                 {"256-QAM", false, 1.39}};
    int var_ok = 0;
    std::string var_txt;
    for (const auto& a : anchors) {
        auto c = signal_cumulants(a.name);
        double v = a.real_axis ? noisy_variance_real(c, 1.0, 1) : noisy_variance_fourfold(c, 1.0, 1);
        if (!var_txt.empty()) var_txt += "/";
        var_txt += fmt("%.2f", v);
        if (std::abs(v - a.value) <= 0.005 + 1e-12) ++var_ok;
    }

    bool ok = matched == 17 && bad.empty() && var_ok == 5;
    detail = std::to_string(matched) + fmt("/17 rows match to 4 decimals (max |d| = %.2e), ", worst) +
             std::to_string(var_ok) + "/5 noiseless J*var anchors [" + var_txt + "]" +
             (bad.empty() ? "" : ";" + bad);
    return ok;
}

bool criterion2(std::string& detail) {
    struct Row {
        const char* mod;
        double jvar;  // 0 marks the identically-zero rows
        std::uint64_t seed;
    };
    const Row rows[] = {{"BPSK", 0.0, 9201}, {"QPSK", 0.0, 9202}, {"4-PAM", 10.24, 9203},
                        {"16-QAM", 1.3824, 9204}};
    const int j = 1000, frames = 2000;

    bool ok = true;
    std::ostringstream txt;
    for (const auto& row : rows) {
        std::vector<double> vals;
        vals.reserve(frames);
        std::mt19937_64 rng(row.seed);
        auto pts = build_constellation(row.mod).points;
        std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
        std::vector<cplx> frame(size_t(j), cplx(0.0));
        for (int f = 0; f < frames; ++f) {
            for (auto& v : frame) v = pts[pick(rng)];
            vals.push_back(estimate_c42_frame(center_signal(frame)).c42);
        }
        double var = var_of(vals);
        bool row_ok = row.jvar == 0.0 ? var <= 0.002
                                      : std::abs(var * j - row.jvar) <= 0.15 * row.jvar;
        ok = ok && row_ok;
        txt << (txt.tellp() > 0 ? ", " : "") << row.mod << " J*var=" << fmt("%.4f", var * j)
            << (row_ok ? "" : " <-- out of band");
    }
    detail = txt.str();
    return ok;
}

bool criterion3(std::string& detail) {
    const int j = 1000, frames = 2000;

    ScenarioConfig ocfg = make_cfg(access_t::ofdma, "QPSK", 4, 10.0, 1.0, 200);
    std::mt19937_64 orng(9301);
    auto ofdm = gen_ofdma(ocfg, j * 2 * frames, orng);  // 4000 frames for a tight variance read
    auto ovals = frame_values_true_power(ofdm.streams[0], j);
    double omean = mean_of(ovals), ojvar = var_of(ovals) * j;

    ScenarioConfig ccfg = make_cfg(access_t::cdma, "BPSK", 16, 10.0, 1.0, 200);
    std::mt19937_64 crng(9302);
    auto cdma = gen_cdma(ccfg, j * frames, crng);
    auto cvals = frame_values_true_power(cdma.streams[0], j);
    double cmean = mean_of(cvals);

    bool omean_ok = std::abs(omean) <= 0.05;
    bool ojvar_ok = std::abs(ojvar - 4.0) <= 0.8;
    bool cmean_ok = std::abs(cmean + 0.125) <= 0.03;
    detail = fmt("ofdm mean=%+.4f J*var=%.3f, cdma mean=%+.4f", omean, ojvar, cmean) +
             (omean_ok ? "" : " [ofdm mean out]") + (ojvar_ok ? "" : " [ofdm J*var out]") +
             (cmean_ok ? "" : " [cdma mean out]");
    return omean_ok && ojvar_ok && cmean_ok;
}

bool criterion4(std::string& detail) {
    auto cfg = make_cfg(access_t::tdma, "QPSK", 4, 10.0, 1.0, 200);
    auto st = run_trials(cfg, 1000, 94001, 1);
    double fa = st.n_decided > 0 ? double(st.n_flagged) / st.n_decided : 1.0;
    detail = fmt("false-alarm rate %.4f over %.0f decided trials (%.0f insufficient)", fa,
                 double(st.n_decided), double(st.n_insufficient));
    return fa <= 0.08;
}

bool criterion5(std::string& detail) {
    std::vector<double> per_class;
    double classavg = tdma_class_average(10.0, 60, 95001, &per_class);
    double det = contention_detection(10.0, 1.0, 400, 95002);

    bool avg_ok = std::abs(classavg - 0.977) <= 0.03 + 1e-12;
    bool det_ok = std::abs(det - 0.95) <= 0.05 + 1e-12;
    std::ostringstream txt;
    txt << fmt("class-avg accuracy %.4f (target 0.977 +- 0.03), detection %.4f (target 0.95 +- 0.05)",
               classavg, det);
    if (avg_ok && det_ok) {
        detail = txt.str();
        return true;
    }

    // fallback: strict monotonicity over SNR for the slotted class average and
    // over load for contention detection
    double a0 = tdma_class_average(0.0, 40, 95003);
    double a4 = tdma_class_average(4.0, 40, 95004);
    double a10 = tdma_class_average(10.0, 40, 95005);
    double d1 = contention_detection(10.0, 0.1, 300, 95006);
    double d5 = contention_detection(10.0, 0.5, 300, 95007);
    double d10 = contention_detection(10.0, 1.0, 300, 95008);
    bool mono = a0 < a4 && a4 < a10 && d1 < d5 && d5 < d10;
    txt << fmt("; fallback snr sweep %.3f/%.3f/%.3f", a0, a4, a10)
        << fmt(" load sweep %.3f/%.3f/%.3f", d1, d5, d10)
        << (mono ? " (monotone)" : " (not monotone)");
    detail = txt.str();
    return mono;
}

bool criterion6(std::string& detail) {
    struct Pt {
        const char* name;
        ScenarioConfig cfg;
        double acc10 = 0.0, acc300 = 0.0;
    };
    std::vector<Pt> pts = {
        {"tdma", make_cfg(access_t::tdma, "QPSK", 4, 5.0, 0.5, 10)},
        {"cdma", make_cfg(access_t::cdma, "BPSK", 16, 5.0, 0.5, 10)},
        {"ofdma", make_cfg(access_t::ofdma, "QPSK", 4, 5.0, 0.5, 10)},
        {"contention", make_cfg(access_t::contention, "QPSK", 4, 5.0, 0.5, 10)},
    };

    const int trials = 500;
    std::uint64_t row = 0;
    for (auto& p : pts) {
        for (int f : {10, 300}) {
            p.cfg.f = f;
            auto st = run_trials(p.cfg, trials, derive_seed(96001, row++), 1);
            double acc = p.cfg.method == access_t::contention ? st.p_correct : label_accuracy(st);
            (f == 10 ? p.acc10 : p.acc300) = acc;
        }
    }

    bool ok = true;
    std::ostringstream txt;
    for (const auto& p : pts) {
        bool up = p.acc300 > p.acc10;
        ok = ok && up;
        txt << (txt.tellp() > 0 ? ", " : "") << p.name << " "
            << fmt("%.3f->%.3f", p.acc10, p.acc300) << (up ? "" : " <-- no gain");
    }
    double gap = pts[1].acc300 - pts[1].acc10;
    bool gap_ok = gap >= 0.3;
    ok = ok && gap_ok;
    txt << fmt("; cdma gain %.3f", gap) << (gap_ok ? " >= 0.3" : " < 0.3");
    detail = txt.str();
    return ok;
}

bool criterion7(std::string& detail) {
    // (a) closed-form noisy variances against the general moment expression
    const char* real_mods[] = {"BPSK", "4-PAM", "8-PAM", "16-PAM"};
    const char* four_mods[] = {"QPSK", "8-PSK", "16-QAM", "64-QAM", "256-QAM", "V29", "V32"};
    double worst_var = 0.0;
    auto check_var = [&](const std::string& mod, bool real_axis) {
        auto cs = signal_cumulants(mod);
        for (double rho : {1.0, 1.25, 1.5, 1.75, 2.0}) {
            CumulantSet noisy = cs;
            noisy.set(2, 1, rho);
            auto m = cumulants_to_moments(noisy);
            double general = general_c42_variance(m, 1);
            double closed = real_axis ? noisy_variance_real(cs, rho, 1)
                                      : noisy_variance_fourfold(cs, rho, 1);
            worst_var = std::max(worst_var, std::abs(general - closed));
        }
    };
    for (const char* mod : real_mods) check_var(mod, true);
    for (const char* mod : four_mods) check_var(mod, false);

    // (b) moment <-> cumulant round trip over every alphabet plus the limits
    double worst_rt = 0.0;
    auto check_rt = [&](const MomentSet& m) {
        auto back = cumulants_to_moments(moments_to_cumulants(m));
        for (int k = 0; k <= 8; ++k)
            for (int i = 0; i <= k; ++i)
                worst_rt = std::max(worst_rt, std::abs(back.get(k, i) - m.get(k, i)));
    };
    for (const char* mod : real_mods) check_rt(alphabet_moments(build_constellation(mod)));
    for (const char* mod : four_mods) check_rt(alphabet_moments(build_constellation(mod)));
    check_rt(gaussian_moments(1.0));
    check_rt(pam_continuum_moments());
    check_rt(qam_continuum_moments());

    // (c) chi-square quantile against the quadrature oracle
    double worst_chi = 0.0;
    for (int dof : {1, 2, 10, 100, 200, 300})
        for (double p : {0.9, 0.95, 0.99})
            worst_chi = std::max(worst_chi,
                                 std::abs(chi2_cdf_oracle(chi_square_quantile(p, dof), dof) - p));

    // (d) the normalized statistic ignores a flat complex gain
    auto base = draw_symbols("16-QAM", 40 * 500, 9701);
    auto fs0 = frame_series(base, 500, 40, 0.0);
    double worst_fade = 0.0;
    for (cplx h : {cplx(0.3, 0.4), cplx(-1.7, 0.2), cplx(0.05, -0.02)}) {
        auto scaled = base;
        for (auto& v : scaled) v *= h;
        auto fsh = frame_series(scaled, 500, 40, 0.0);
        for (size_t i = 0; i < fs0.values.size(); ++i)
            worst_fade = std::max(worst_fade, std::abs(fsh.values[i] - fs0.values[i]));
    }

    bool ok = worst_var <= 1e-9 && worst_rt <= 1e-10 && worst_chi <= 1e-8 && worst_fade <= 1e-9;
    detail = fmt("variance agreement %.1e, round trip %.1e, ", worst_var, worst_rt) +
             fmt("chi-square residual %.1e, fading residual %.1e", worst_chi, worst_fade);
    return ok;
}

bool criterion8(std::string& detail) {
    // the noiseless J*var of every PSK order >= 4 must compute to zero; the
    // once-published 12.00 figure came from a dropped O(1/J) term
    double worst = 0.0;
    for (const char* mod : {"QPSK", "8-PSK", "16-PSK"})
        worst = std::max(worst, std::abs(noisy_variance_fourfold(signal_cumulants(mod), 1.0, 1)));
    bool ok = worst <= 0.005 && std::abs(worst - 12.0) >= 1.0;
    detail = fmt("PSK(>=4) noiseless J*var = %.2e (zero to 2 decimals, not 12.00)", worst);
    return ok;
}

struct GateSpec {
    int id;
    bool (*run)(std::string&);
    double budget_s;  // wall-clock ceiling; 0 means unconstrained
};

const GateSpec kGates[] = {
    {1, criterion1, 1.0},    {2, criterion2, 60.0},   {3, criterion3, 60.0},
    {4, criterion4, 600.0},  {5, criterion5, 1800.0}, {6, criterion6, 1800.0},
    {7, criterion7, 10.0},   {8, criterion8, 0.0},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        int id = std::atoi(argv[i]);
        if (id < 1 || id > 8) {
            std::fprintf(stderr, "usage: %s [criterion numbers 1..8]\n", argv[0]);
            return 2;
        }
        which.push_back(id);
    }
    if (which.empty())
        for (const auto& g : kGates) which.push_back(g.id);

    bool all_ok = true;
    for (int id : which) {
        const auto& gate = kGates[size_t(id - 1)];
        std::string detail;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = gate.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (gate.budget_s > 0.0 && secs >= gate.budget_s) {
            ok = false;
            detail += fmt(" [over %.0f s budget]", gate.budget_s);
        }
        std::printf("criterion %d: %s - %s (%.2f s)\n", id, ok ? "PASS" : "FAIL", detail.c_str(),
                    secs);
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
