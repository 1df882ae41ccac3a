#include "cam/classifier.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

namespace cam {

namespace {

// guards against the finite-frame bias of near-deterministic classes:
// per-frame centering biases the estimate by O(1/j), so the effective
// variance can never be taken below these scales
constexpr double kStage1FloorNum = 100.0;  // floor on var(w) is this / j^2
constexpr double kStage2FloorNum = 300.0;  // floor on per-frame var is this / j^2
constexpr double kStage2Alpha = 1.15;      // margin on the modeled frame variance
constexpr double kRhoCap = 4.0;

}  // namespace

double sample_mean_w(const FrameSeries& fs) {
    if (fs.values.empty()) throw argument_error("sample_mean_w: empty frame series");
    double s = 0.0;
    for (double v : fs.values) s += v;
    return s / double(fs.values.size());
}

Stage1Result stage1_classify(double w, const std::vector<ClassStatistics>& table, int f) {
    if (table.empty()) throw argument_error("stage1_classify: empty class table");
    if (f < 1) throw argument_error("stage1_classify: f must be positive");

    Stage1Result res;
    res.loglik.reserve(table.size());
    double best = -1e300;
    for (size_t i = 0; i < table.size(); ++i) {
        const auto& st = table[i];
        if (st.j < 1) throw argument_error("stage1_classify: class table entry missing j");
        double vw = std::max(st.var, 1e-6) / double(f);
        vw = std::max(vw, kStage1FloorNum / (double(st.j) * st.j));
        double ll = -0.5 * std::log(2.0 * M_PI * vw) - (w - st.mean) * (w - st.mean) / (2.0 * vw);
        res.loglik.push_back(ll);
        if (ll > best) {
            best = ll;
            res.index = int(i);
        }
    }
    res.label = table[size_t(res.index)].label;
    return res;
}

double chi_square_quantile(double p, int dof) {
    if (!(p > 0.0 && p < 1.0)) throw argument_error("chi_square_quantile: p must be in (0,1)");
    if (dof < 1) throw argument_error("chi_square_quantile: dof must be positive");
    boost::math::chi_squared_distribution<double> dist{double(dof)};
    return boost::math::quantile(dist, p);
}

Stage2Result stage2_contention(const FrameSeries& fs, const ClassStatistics& m_hat,
                               double p_c_given_t) {
    if (fs.values.size() < 2) throw argument_error("stage2_contention: need at least 2 frames");
    if (!(p_c_given_t > 0.0 && p_c_given_t < 1.0))
        throw argument_error("stage2_contention: p_c_given_t must be in (0,1)");

    const int f = int(fs.values.size());
    const int j = fs.frame_length > 0 ? fs.frame_length : m_hat.j;
    if (j < 1) throw argument_error("stage2_contention: unknown frame length");
    const double floor = kStage2FloorNum / (double(j) * j);

    const bool per_frame = fs.rho.size() == fs.values.size() && m_hat.model.valid;
    double t_stat = 0.0, v_bar = 0.0;
    for (int i = 0; i < f; ++i) {
        double v;
        if (per_frame) {
            double rho = std::min(std::max(fs.rho[size_t(i)], 1.0), kRhoCap);
            v = kStage2Alpha * m_hat.model.jvar_frame(rho) / double(j) + floor;
        } else {
            v = std::max(m_hat.var, floor);
        }
        double dev = fs.values[size_t(i)] - m_hat.mean;
        t_stat += dev * dev / v;
        v_bar += v;
    }
    v_bar /= double(f);

    double q = chi_square_quantile(1.0 - p_c_given_t, f);
    Stage2Result res;
    res.varsigma2 = v_bar * t_stat / double(f);
    res.tau = v_bar * q / double(f);
    res.contention = res.varsigma2 >= res.tau;
    return res;
}

ClassificationResult classify(const std::vector<cplx>& r, const AnalysisConfig& cfg) {
    if (cfg.sigma2 < 0.0) throw argument_error("classify: negative noise variance");
    auto table = build_class_table(cfg.n_total_cdma, 1.0 + cfg.sigma2, cfg.j);
    return classify(r, cfg, table);
}

ClassificationResult classify(const std::vector<cplx>& r, const AnalysisConfig& cfg,
                              const std::vector<ClassStatistics>& table) {
    if (cfg.sigma2 < 0.0) throw argument_error("classify: negative noise variance");
    auto fs = frame_series(r, cfg.j, cfg.f, cfg.sigma2, cfg.kappa);

    ClassificationResult res;
    res.frames_used = fs.frames_used;
    res.w = sample_mean_w(fs);
    auto s1 = stage1_classify(res.w, table, fs.frames_used);
    res.label = s1.label;
    res.loglik = std::move(s1.loglik);
    auto s2 = stage2_contention(fs, table[size_t(s1.index)], cfg.p_c_given_t);
    res.contention = s2.contention;
    res.varsigma2 = s2.varsigma2;
    res.tau = s2.tau;
    res.verdict = res.contention ? "contention" : res.label;
    return res;
}

}  // namespace cam
