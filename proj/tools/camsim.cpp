#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "cam/class_stats.hpp"
#include "cam/classifier.hpp"
#include "cam/constellations.hpp"
#include "cam/harness.hpp"
#include "cam/netsim.hpp"

namespace {

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw cam::io_error("cannot open output file " + path);
    return file;
}

void print_tables(double snr_db, int j, int n_total, std::ostream& out) {
    out << "# reference normalized fourth-order cumulants\n";
    out << "name,c42\n";
    for (const auto& row : cam::reference_c42_table()) {
        char line[96];
        std::snprintf(line, sizeof line, "%s,%.6f\n", row.name.c_str(), row.c42);
        out << line;
    }

    double rho = 1.0 + cam::sigma2_from_snr_db(snr_db);
    out << "\n# class operating table (rho = " << rho << ", j = " << j << ")\n";
    out << "label,method,modulation,mean,jvar,var\n";
    for (const auto& st : cam::build_class_table(n_total, rho, j)) {
        char line[160];
        std::snprintf(line, sizeof line, "%s,%s,%s,%.6f,%.6f,%.8g\n", st.label.c_str(),
                      cam::to_string(st.method).c_str(), st.modulation.c_str(), st.mean,
                      st.var * j, st.var);
        out << line;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"channel access method classifier and network simulator"};
    app.require_subcommand(1);

    // table
    auto* t = app.add_subcommand("table", "print reference cumulants and the class table");
    double t_snr = 10.0;
    int t_j = 500, t_n = 16;
    std::string t_out;
    t->add_option("--snr-db", t_snr, "average SNR in dB used for the operating table");
    t->add_option("--j", t_j, "frame length");
    t->add_option("--n-total", t_n, "spreading users for the cdma rows");
    t->add_option("--out", t_out, "output file (default stdout)");

    // sweep
    auto* s = app.add_subcommand("sweep", "monte carlo accuracy sweep over a config grid");
    std::string s_cfg, s_out;
    int s_trials = 0, s_workers = 0;
    std::uint64_t s_seed = 0;
    bool s_have_seed = false;
    s->add_option("--config", s_cfg, "json config file")->required();
    s->add_option("--out", s_out, "csv output file (default stdout)");
    s->add_option("--trials", s_trials, "override trial count");
    s->add_option("--workers", s_workers, "override worker threads");
    s->add_option("--seed", s_seed, "override master seed")->each([&](const std::string&) {
        s_have_seed = true;
    });

    // classify
    auto* c = app.add_subcommand("classify", "classify a recorded capture");
    std::string c_in, c_out;
    c->add_option("--in", c_in, "capture path (.iq or prefix)")->required();
    c->add_option("--out", c_out, "json output file (default stdout)");

    // export
    auto* e = app.add_subcommand("export", "synthesize a scenario and write a capture");
    std::string e_cfg, e_out;
    std::uint64_t e_seed = 0;
    bool e_have_seed = false;
    e->add_option("--config", e_cfg, "json config file (scenario section is used)")->required();
    e->add_option("--out", e_out, "output prefix")->required();
    e->add_option("--seed", e_seed, "override scenario seed")->each([&](const std::string&) {
        e_have_seed = true;
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (t->parsed()) {
            std::ofstream file;
            print_tables(t_snr, t_j, t_n, open_out(t_out, file));
            return 0;
        }
        if (s->parsed()) {
            auto hc = cam::load_harness_config(s_cfg);
            if (s_trials > 0) hc.trials = s_trials;
            if (s_workers > 0) hc.workers = s_workers;
            if (s_have_seed) hc.seed = s_seed;
            std::ofstream file;
            cam::sweep(hc.scenario, hc.grid, hc.trials, hc.seed, hc.workers,
                       open_out(s_out, file));
            return 0;
        }
        if (c->parsed()) {
            std::ofstream file;
            return cam::classify_capture(c_in, open_out(c_out, file));
        }
        if (e->parsed()) {
            auto hc = cam::load_harness_config(e_cfg);
            if (e_have_seed) hc.scenario.seed = e_seed;
            auto scen = cam::synthesize_scenario(hc.scenario);
            cam::write_capture(e_out, scen, hc.scenario);
            std::cout << "wrote " << e_out << ".iq (" << scen.r.size() << " samples), " << e_out
                      << ".json\n";
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
