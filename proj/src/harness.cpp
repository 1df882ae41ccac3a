#include "cam/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cam/classifier.hpp"

namespace cam {

access_t label_method(const std::string& label) {
    if (label == "contention") return access_t::contention;
    if (label.size() < 2 || label[0] != 'M') throw argument_error("label_method: bad label " + label);
    int idx = std::atoi(label.c_str() + 1);
    if (idx >= 1 && idx <= 10) return access_t::tdma;
    if (idx == 11 || idx == 12) return access_t::ofdma;
    if (idx >= 13 && idx <= 15) return access_t::cdma;
    throw argument_error("label_method: bad label " + label);
}

namespace {

struct Tally {
    int decided = 0, insufficient = 0, correct_method = 0, correct_label = 0, flagged = 0;

    void add(const Tally& o) {
        decided += o.decided;
        insufficient += o.insufficient;
        correct_method += o.correct_method;
        correct_label += o.correct_label;
        flagged += o.flagged;
    }
};

Tally run_block(const ScenarioConfig& cfg, std::uint64_t master_seed, int begin, int end,
                int stride) {
    Tally t;
    AnalysisConfig ac;
    ac.j = cfg.j;
    ac.f = cfg.f;
    ac.sigma2 = sigma2_from_snr_db(cfg.snr_db);
    ac.kappa = cfg.kappa;
    ac.p_c_given_t = cfg.p_c_given_t;
    ac.n_total_cdma = cfg.method == access_t::cdma ? cfg.n_total : 16;
    const auto table = build_class_table(ac.n_total_cdma, 1.0 + ac.sigma2, ac.j);

    for (int k = begin; k < end; k += stride) {
        ScenarioConfig sc = cfg;
        sc.seed = derive_seed(master_seed, std::uint64_t(k));
        Scenario scen = synthesize_scenario(sc);

        try {
            auto res = classify(scen.r, ac, table);
            ++t.decided;
            if (res.contention) ++t.flagged;
            if (scen.method == access_t::contention) {
                if (res.contention) {
                    ++t.correct_method;
                    ++t.correct_label;
                }
            } else {
                if (!res.contention && label_method(res.label) == scen.method) ++t.correct_method;
                if (!res.contention && res.label == scen.true_label) ++t.correct_label;
            }
        } catch (const insufficient_data_error&) {
            ++t.insufficient;
        }
    }
    return t;
}

}  // namespace

TrialStats run_trials(const ScenarioConfig& cfg, int n_trials, std::uint64_t master_seed,
                      int workers) {
    if (n_trials < 1) throw argument_error("run_trials: n_trials must be positive");
    if (workers < 1) workers = 1;
    workers = std::min(workers, n_trials);

    Tally total;
    if (workers == 1) {
        total = run_block(cfg, master_seed, 0, n_trials, 1);
    } else {
        std::vector<Tally> parts(size_t(workers), Tally{});
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] { parts[size_t(w)] = run_block(cfg, master_seed, w, n_trials, workers); });
        for (auto& th : pool) th.join();
        for (const auto& p : parts) total.add(p);
    }

    TrialStats st;
    st.n_trials = n_trials;
    st.n_decided = total.decided;
    st.n_insufficient = total.insufficient;
    st.n_correct_method = total.correct_method;
    st.n_correct_label = total.correct_label;
    st.n_flagged = total.flagged;
    if (total.decided > 0) {
        st.p_correct = double(total.correct_method) / total.decided;
        auto ci = wilson_interval(total.correct_method, total.decided);
        st.ci_low = ci.first;
        st.ci_high = ci.second;
    }
    return st;
}

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

void sweep(const ScenarioConfig& base, const SweepGrid& grid, int n_trials,
           std::uint64_t master_seed, int workers, std::ostream& out) {
    auto methods = grid.methods.empty() ? std::vector<access_t>{base.method} : grid.methods;
    auto mods = grid.modulations.empty() ? std::vector<std::string>{base.modulation}
                                         : grid.modulations;
    auto snrs = grid.snr_db.empty() ? std::vector<double>{base.snr_db} : grid.snr_db;
    auto loads = grid.loads.empty() ? std::vector<double>{base.load} : grid.loads;
    auto frames = grid.frames.empty() ? std::vector<int>{base.f} : grid.frames;

    out << "method,modulation,snr_db,load,F,J,n_trials,p_correct,ci_low,ci_high\n";
    std::uint64_t row = 0;
    for (auto method : methods)
        for (const auto& mod : mods)
            for (double snr : snrs)
                for (double load : loads)
                    for (int f : frames) {
                        ScenarioConfig cfg = base;
                        cfg.method = method;
                        cfg.modulation = mod;
                        cfg.snr_db = snr;
                        cfg.load = load;
                        cfg.f = f;
                        auto st = run_trials(cfg, n_trials, derive_seed(master_seed, row), workers);
                        char tail[128];
                        std::snprintf(tail, sizeof tail, "%d,%.6f,%.6f,%.6f", st.n_trials,
                                      st.p_correct, st.ci_low, st.ci_high);
                        out << to_string(method) << ',' << mod << ',' << fmt_num(snr) << ','
                            << fmt_num(load) << ',' << f << ',' << cfg.j << ',' << tail << '\n';
                        ++row;
                    }
}

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw config_error("config: unknown key '" + it.key() + "' in " + where);
    }
}

double parse_snr(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw config_error("config: snr_db string must be \"inf\"");
    }
    return v.get<double>();
}

ScenarioConfig parse_scenario(const json& s) {
    reject_unknown(s,
                   {"method", "modulation", "n_total", "j", "f", "snr_db", "load", "slot_len",
                    "packet_len", "n_sc", "n_p", "l_c", "walsh_codes", "kappa", "p_c_given_t",
                    "seed"},
                   "scenario");
    ScenarioConfig cfg;
    if (s.contains("method")) cfg.method = access_from_string(s["method"].get<std::string>());
    if (s.contains("modulation")) cfg.modulation = s["modulation"].get<std::string>();
    if (s.contains("n_total")) cfg.n_total = s["n_total"].get<int>();
    if (s.contains("j")) cfg.j = s["j"].get<int>();
    if (s.contains("f")) cfg.f = s["f"].get<int>();
    if (s.contains("snr_db")) cfg.snr_db = parse_snr(s["snr_db"]);
    if (s.contains("load")) cfg.load = s["load"].get<double>();
    if (s.contains("slot_len")) cfg.slot_len = s["slot_len"].get<int>();
    if (s.contains("packet_len")) cfg.packet_len = s["packet_len"].get<int>();
    if (s.contains("n_sc")) cfg.n_sc = s["n_sc"].get<int>();
    if (s.contains("n_p")) cfg.n_p = s["n_p"].get<int>();
    if (s.contains("l_c")) cfg.l_c = s["l_c"].get<int>();
    if (s.contains("walsh_codes")) cfg.walsh_codes = s["walsh_codes"].get<bool>();
    if (s.contains("kappa")) cfg.kappa = s["kappa"].get<double>();
    if (s.contains("p_c_given_t")) cfg.p_c_given_t = s["p_c_given_t"].get<double>();
    if (s.contains("seed")) cfg.seed = s["seed"].get<std::uint64_t>();
    return cfg;
}

SweepGrid parse_grid(const json& g) {
    reject_unknown(g, {"methods", "modulations", "snr_db", "loads", "frames"}, "grid");
    SweepGrid grid;
    if (g.contains("methods"))
        for (const auto& m : g["methods"]) grid.methods.push_back(access_from_string(m.get<std::string>()));
    if (g.contains("modulations"))
        for (const auto& m : g["modulations"]) grid.modulations.push_back(m.get<std::string>());
    if (g.contains("snr_db"))
        for (const auto& v : g["snr_db"]) grid.snr_db.push_back(parse_snr(v));
    if (g.contains("loads"))
        for (const auto& v : g["loads"]) grid.loads.push_back(v.get<double>());
    if (g.contains("frames"))
        for (const auto& v : g["frames"]) grid.frames.push_back(v.get<int>());
    return grid;
}

}  // namespace

HarnessConfig parse_harness_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config: parse failure: ") + e.what());
    }
    reject_unknown(doc, {"scenario", "grid", "trials", "seed", "workers"}, "top level");

    HarnessConfig hc;
    if (doc.contains("scenario")) hc.scenario = parse_scenario(doc["scenario"]);
    if (doc.contains("grid")) hc.grid = parse_grid(doc["grid"]);
    try {
        if (doc.contains("trials")) hc.trials = doc["trials"].get<int>();
        if (doc.contains("seed")) hc.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("workers")) hc.workers = doc["workers"].get<int>();
    } catch (const json::exception& e) {
        throw config_error(std::string("config: field types: ") + e.what());
    }
    if (hc.trials < 1) throw config_error("config: trials must be positive");
    return hc;
}

HarnessConfig load_harness_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_harness_config(ss.str());
}

int classify_capture(const std::string& path, std::ostream& out) {
    Capture cap;
    try {
        cap = read_capture(path);
    } catch (const std::exception& e) {
        out << nlohmann::json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    }

    AnalysisConfig ac;
    ac.j = cap.j;
    ac.f = cap.f;
    ac.sigma2 = cap.sigma2;
    ac.n_total_cdma = cap.method == "cdma" ? cap.n_total : 16;

    try {
        auto res = classify(cap.r, ac);
        nlohmann::json doc{{"label", res.label},         {"contention", res.contention},
                           {"verdict", res.verdict},     {"w", res.w},
                           {"varsigma2", res.varsigma2}, {"tau", res.tau},
                           {"frames_used", res.frames_used}};
        out << doc.dump(2) << "\n";
        return 0;
    } catch (const insufficient_data_error& e) {
        out << nlohmann::json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << nlohmann::json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
}

}  // namespace cam
