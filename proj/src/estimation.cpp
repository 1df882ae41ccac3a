#include "cam/estimation.hpp"

#include <algorithm>
#include <cmath>

namespace cam {

std::vector<cplx> center_signal(const std::vector<cplx>& r) {
    if (r.empty()) throw argument_error("center_signal: empty input");
    cplx mean = 0.0;
    for (auto v : r) mean += v;
    mean /= double(r.size());
    std::vector<cplx> out;
    out.reserve(r.size());
    for (auto v : r) out.push_back(v - mean);
    return out;
}

FrameEstimate estimate_c42_frame(const std::vector<cplx>& y) {
    if (y.size() < 4) throw argument_error("estimate_c42_frame: need at least 4 samples");
    double m21 = 0.0, m42 = 0.0;
    cplx m20 = 0.0;
    for (auto v : y) {
        double p = std::norm(v);
        m21 += p;
        m42 += p * p;
        m20 += v * v;
    }
    double n = double(y.size());
    m21 /= n;
    m42 /= n;
    m20 /= n;
    return FrameEstimate{m42 - std::norm(m20) - 2.0 * m21 * m21, m21, m20};
}

double normalize_c42(double c42_hat, double c21_hat, double sigma2) {
    if (sigma2 < 0.0) throw argument_error("normalize_c42: negative noise variance");
    double d = c21_hat - sigma2;
    if (!(d > 0.05 * sigma2) || d <= 0.0)
        throw degenerate_frame_error("normalize_c42: no usable signal power in frame");
    return c42_hat / (d * d);
}

namespace {

// centered moving-average power, window shrinks at the edges
std::vector<double> ma_power(const std::vector<cplx>& r, int window) {
    const int n = int(r.size());
    std::vector<double> prefix(size_t(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[size_t(i) + 1] = prefix[size_t(i)] + std::norm(r[size_t(i)]);
    std::vector<double> p(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - window / 2);
        int hi = std::min(n, lo + window);
        lo = std::max(0, hi - window);
        p[size_t(i)] = (prefix[size_t(hi)] - prefix[size_t(lo)]) / double(hi - lo);
    }
    return p;
}

}  // namespace

std::vector<cplx> squelch(const std::vector<cplx>& r, double sigma2, double kappa, int window) {
    if (r.empty()) return {};
    if (window < 1) throw argument_error("squelch: window must be positive");
    if (kappa <= 0.0) throw argument_error("squelch: kappa must be positive");
    auto p = ma_power(r, window);
    std::vector<cplx> kept;
    kept.reserve(r.size());
    for (size_t i = 0; i < r.size(); ++i)
        if (p[i] > kappa * sigma2) kept.push_back(r[i]);
    return kept;
}

double estimate_noise_floor(const std::vector<cplx>& r, double sigma2_init, double kappa,
                            int window) {
    if (r.empty()) return sigma2_init;
    auto p = ma_power(r, window);
    std::vector<double> rejected;
    for (double v : p)
        if (v <= kappa * sigma2_init) rejected.push_back(v);
    if (rejected.empty()) return sigma2_init;
    size_t mid = rejected.size() / 2;
    std::nth_element(rejected.begin(), rejected.begin() + long(mid), rejected.end());
    // median-to-mean factor of a Gamma(window) average
    double corr = (3.0 * window + 0.2) / (3.0 * window - 0.8);
    return rejected[mid] * corr;
}

FrameSeries frame_series(const std::vector<cplx>& r, int j, int f, double sigma2, double kappa) {
    if (j < 4) throw argument_error("frame_series: frame length too small");
    if (f < 2) throw argument_error("frame_series: need at least 2 frames");
    if (sigma2 < 0.0) throw argument_error("frame_series: negative noise variance");

    FrameSeries fs;
    fs.frame_length = j;
    fs.noise_variance = sigma2;

    const size_t n_blocks = r.size() / size_t(j);
    std::vector<cplx> block;
    block.reserve(size_t(j));
    for (size_t b = 0; b < n_blocks && fs.frames_used < f; ++b) {
        auto first = r.begin() + long(b) * j;
        double p = 0.0;
        for (int t = 0; t < j; ++t) p += std::norm(first[t]);
        p /= double(j);
        if (!(p > kappa * sigma2)) continue;  // silent or gated-out block

        block.assign(first, first + j);
        auto centered = center_signal(block);
        auto est = estimate_c42_frame(centered);
        double d = est.c21 - sigma2;
        if (!(d > 0.05 * sigma2) || d <= 0.0) continue;  // borderline after centering
        fs.values.push_back(est.c42 / (d * d));
        fs.rho.push_back(est.c21 / d);
        fs.power.push_back(p);
        ++fs.frames_used;
    }

    if (fs.frames_used < 2)
        throw insufficient_data_error("frame_series: fewer than 2 usable frames");
    return fs;
}

}  // namespace cam
