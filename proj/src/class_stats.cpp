#include "cam/class_stats.hpp"

#include <cmath>

namespace cam {

namespace {

double lagrange_eval(const std::array<double, 5>& nodes, const std::array<double, 5>& vals,
                     double x) {
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) {
        double w = vals[size_t(i)];
        for (int k = 0; k < 5; ++k) {
            if (k == i) continue;
            w *= (x - nodes[size_t(k)]) / (nodes[size_t(i)] - nodes[size_t(k)]);
        }
        sum += w;
    }
    return sum;
}

}  // namespace

double VarModel::jvar_table(double rho) const { return lagrange_eval(nodes, table_g, rho) + extra; }
double VarModel::jvar_frame(double rho) const { return lagrange_eval(nodes, frame_g, rho) + extra; }

double general_c42_variance(const MomentSet& m, int j) {
    if (j < 1) throw argument_error("general_c42_variance: j must be positive");
    const double m84 = m.m84(), m63 = m.m63(), m42 = m.m42(), m21 = m.m21();
    const cplx m20 = m.m20(), m40 = m.m40(), m41 = m.m41(), m62 = m.m62();

    double g = m84 - m42 * m42;
    g += 8.0 * m21 *
         (2.0 * m21 * (m42 - m21 * m21 - std::norm(m20)) + 2.0 * (m41 * std::conj(m20)).real() -
          m63 + m21 * m42);
    g += 2.0 * (std::conj(m20) * (m40 * std::conj(m20) - 2.0 * m62)).real();
    g += 2.0 * std::norm(m20) * (3.0 * m42 - 2.0 * std::norm(m20));
    return g / double(j);
}

double normalized_c42_variance(const MomentSet& m, int j) {
    if (j < 1) throw argument_error("normalized_c42_variance: j must be positive");
    const double m42 = m.m42(), m21 = m.m21(), m63 = m.m63();
    const cplx m20 = m.m20(), m41 = m.m41();

    double c42 = m42 - std::norm(m20) - 2.0 * m21 * m21;
    double var_d = m42 - m21 * m21;
    double cov = (m63 - m42 * m21) - 2.0 * (std::conj(m20) * (m41 - m20 * m21)).real() -
                 4.0 * m21 * var_d;
    double g = general_c42_variance(m, 1) + 4.0 * c42 * c42 * var_d - 4.0 * c42 * cov;
    return g / double(j);
}

namespace {

void require_rho(double rho) {
    if (!(rho >= 1.0)) throw argument_error("noisy variance: rho must be >= 1");
}

}  // namespace

double noisy_variance_real(const CumulantSet& c, double rho, int j) {
    require_rho(rho);
    if (j < 1) throw argument_error("noisy_variance_real: j must be positive");
    if (std::abs(c.c20() - cplx(c.c21())) > 1e-9 || std::abs(c.c40().imag()) > 1e-9 ||
        std::abs(c.c40() - cplx(c.c42())) > 1e-9)
        throw argument_error("noisy_variance_real: cumulants are not from a real alphabet");

    const double c42 = c.c42(), c63 = c.c63(), c84 = c.c84();
    double g = c84 + 8.0 * (rho + 1.0) * c63 + 34.0 * c42 * c42 +
               (20.0 * rho * rho + 32.0 * rho + 20.0) * c42 + 4.0 * std::pow(rho, 4) +
               16.0 * rho * rho + 4.0;
    return g / double(j);
}

double noisy_variance_fourfold(const CumulantSet& c, double rho, int j) {
    require_rho(rho);
    if (j < 1) throw argument_error("noisy_variance_fourfold: j must be positive");
    if (std::abs(c.c20()) > 1e-9 || std::abs(c.c41()) > 1e-9 || std::abs(c.c43()) > 1e-9)
        throw argument_error("noisy_variance_fourfold: cumulants are not four-fold symmetric");

    const double c42 = c.c42(), c63 = c.c63(), c84 = c.c84();
    double g = c84 + std::norm(c.c40()) + 8.0 * rho * c63 + 20.0 * rho * rho * c42 +
               17.0 * c42 * c42 + 4.0 * std::pow(rho, 4);
    return g / double(j);
}

VarModel make_var_model(const CumulantSet& signal, double extra) {
    if (std::abs(signal.c21() - 1.0) > 1e-9)
        throw argument_error("make_var_model: signal cumulants must have unit power");
    VarModel vm;
    vm.extra = extra;
    for (size_t i = 0; i < VarModel::nodes.size(); ++i) {
        CumulantSet comp = signal;  // adding circular noise only moves c21
        comp.set(2, 1, VarModel::nodes[i]);
        MomentSet m = cumulants_to_moments(comp);
        vm.table_g[i] = general_c42_variance(m, 1);
        vm.frame_g[i] = normalized_c42_variance(m, 1);
    }
    vm.valid = true;
    return vm;
}

ClassStatistics ofdm_statistics(const std::string& subcarrier_mod, double rho, int j, int n_sc,
                                int n_p) {
    require_rho(rho);
    if (j < 4) throw argument_error("ofdm_statistics: j too small");
    if (n_sc < 2 || n_p < 0 || n_p >= n_sc) throw argument_error("ofdm_statistics: bad n_sc/n_p");

    bool bpsk = subcarrier_mod == "BPSK";
    if (!bpsk && subcarrier_mod != "QPSK" && subcarrier_mod != "4-QAM" &&
        subcarrier_mod != "16-QAM")
        throw config_error("ofdm_statistics: unsupported subcarrier modulation " + subcarrier_mod);

    // duplicated prefix samples and (for real subcarrier symbols) conjugate
    // pairing both add a rho-independent covariance term
    double extra = 8.0 * n_p / double(n_sc + n_p) + (bpsk ? 4.0 : 0.0);
    CumulantSet gaussian;  // large-n_sc limit: every cumulant above power dies
    gaussian.set(2, 1, 1.0);

    // the composite is only asymptotically Gaussian: summing n_sc independent
    // unit-power subcarrier streams leaves a residual fourth cumulant of
    // c42(sub)/n_sc, and at n_sc = 64 that residual (-1/64 for QPSK) is the
    // same order as the gap to the spread classes, so the mean must keep it.
    // Prefix duplication copies samples and leaves marginals alone, so it
    // touches the variance but not the mean.
    auto sub = moments_to_cumulants(alphabet_moments(build_constellation(subcarrier_mod)));

    ClassStatistics st;
    st.label = "OFDM-" + subcarrier_mod;
    st.method = access_t::ofdma;
    st.modulation = subcarrier_mod;
    st.mean = sub.c42() / double(n_sc);
    st.j = j;
    st.rho = rho;
    st.model = make_var_model(gaussian, extra);
    st.var = st.model.jvar_table(rho) / double(j);
    return st;
}

ClassStatistics cdma_statistics(int n_total, double rho, int j, const std::string& chip_data_mod) {
    require_rho(rho);
    if (n_total < 1) throw argument_error("cdma_statistics: n_total must be positive");
    if (j < 4) throw argument_error("cdma_statistics: j too small");

    auto chip = moments_to_cumulants(alphabet_moments(build_constellation(chip_data_mod)));
    CumulantSet comp;  // sum of n_total iid unit chips, rescaled to unit power
    for (int k = 1; k <= 8; ++k) {
        double scale = std::pow(double(n_total), 1.0 - k / 2.0);
        for (int i = 0; i <= k; ++i) comp.c[size_t(k)][size_t(i)] = chip.get(k, i) * scale;
    }

    ClassStatistics st;
    st.label = "CDMA-" + chip_data_mod;
    st.method = access_t::cdma;
    st.modulation = chip_data_mod;
    st.mean = comp.c42();
    st.j = j;
    st.rho = rho;
    st.model = make_var_model(comp);
    st.var = st.model.jvar_table(rho) / double(j);
    return st;
}

std::pair<double, double> multiuser_statistics(const std::vector<UserStat>& users, double sigma2,
                                               int j) {
    if (users.empty()) throw argument_error("multiuser_statistics: no users");
    if (j < 1) throw argument_error("multiuser_statistics: j must be positive");
    double s1 = 0.0, num_mean = 0.0, num_var = 0.0;
    for (const auto& u : users) {
        if (!(u.c21 > 0.0)) throw argument_error("multiuser_statistics: user power must be positive");
        s1 += u.c21;
        num_mean += u.c21 * u.c21 * u.c42;
        num_var += std::pow(u.c21, 4) * u.var;
    }
    double mean = num_mean / (s1 * s1);
    double var = (num_var + std::pow(sigma2, 4) * 4.0 / double(j)) / std::pow(s1, 4);
    return {mean, var};
}

std::pair<double, double> mixture_statistics(const std::vector<MixtureComponent>& comps) {
    if (comps.empty()) throw argument_error("mixture_statistics: empty mixture");
    double wsum = 0.0;
    for (const auto& c : comps) {
        if (c.weight < 0.0) throw argument_error("mixture_statistics: negative weight");
        wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw argument_error("mixture_statistics: weights must sum to 1");
    double mean = 0.0;
    for (const auto& c : comps) mean += c.weight * c.mean;
    double var = 0.0;
    for (const auto& c : comps) var += c.weight * (c.var + (c.mean - mean) * (c.mean - mean));
    return {mean, var};
}

std::vector<ClassStatistics> build_class_table(int n_total_cdma, double rho, int j) {
    require_rho(rho);
    if (j < 4) throw argument_error("build_class_table: j too small");
    if (n_total_cdma < 1) throw argument_error("build_class_table: n_total_cdma must be positive");

    auto slotted = [&](const std::string& mod) {
        auto cum = moments_to_cumulants(alphabet_moments(build_constellation(mod)));
        ClassStatistics st;
        st.method = access_t::tdma;
        st.modulation = mod;
        st.mean = cum.c42();
        st.j = j;
        st.rho = rho;
        st.model = make_var_model(cum);
        st.var = st.model.jvar_table(rho) / double(j);
        return st;
    };

    std::vector<ClassStatistics> table;
    table.push_back(slotted("BPSK"));
    table.push_back(slotted("QPSK"));  // every PSK order >= 4 shares these statistics
    table.back().modulation = "PSK";
    for (int m : {4, 8, 16, 32, 64}) table.push_back(slotted(std::to_string(m) + "-PAM"));
    for (int m : {16, 64, 256}) table.push_back(slotted(std::to_string(m) + "-QAM"));
    table.push_back(ofdm_statistics("4-QAM", rho, j));
    table.push_back(ofdm_statistics("16-QAM", rho, j));
    table.push_back(cdma_statistics(n_total_cdma, rho, j, "BPSK"));
    table.push_back(cdma_statistics(n_total_cdma, rho, j, "4-QAM"));
    table.push_back(cdma_statistics(n_total_cdma, rho, j, "16-QAM"));

    for (size_t i = 0; i < table.size(); ++i) table[i].label = "M" + std::to_string(i + 1);
    return table;
}

}  // namespace cam
