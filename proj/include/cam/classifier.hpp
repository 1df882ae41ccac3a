#pragma once

#include <string>
#include <vector>

#include "cam/class_stats.hpp"
#include "cam/common.hpp"
#include "cam/estimation.hpp"

namespace cam {

struct AnalysisConfig {
    int j = 500;
    int f = 200;
    double sigma2 = 0.1;
    double kappa = 2.0;
    double p_c_given_t = 0.05;
    int n_total_cdma = 16;
};

double sample_mean_w(const FrameSeries& fs);

struct Stage1Result {
    std::string label;
    int index = -1;
    std::vector<double> loglik;  // one entry per table row
};

// Gaussian scoring of the sample mean against every class; ties keep the
// lowest index. f is the number of frames averaged into w.
Stage1Result stage1_classify(double w, const std::vector<ClassStatistics>& table, int f);

double chi_square_quantile(double p, int dof);

struct Stage2Result {
    bool contention = false;
    double varsigma2 = 0.0;
    double tau = 0.0;
};

// Dispersion test: flags contention when the per-frame scatter around the
// chosen class mean exceeds the chi-square acceptance bound. When the series
// carries per-frame power data the variance is evaluated at each frame's
// measured rho; otherwise the class table variance is used for every frame.
Stage2Result stage2_contention(const FrameSeries& fs, const ClassStatistics& m_hat,
                               double p_c_given_t);

struct ClassificationResult {
    std::string label;       // stage-1 winner
    bool contention = false;
    std::string verdict;     // label, or "contention"
    double w = 0.0;
    double varsigma2 = 0.0;
    double tau = 0.0;
    int frames_used = 0;
    std::vector<double> loglik;
};

ClassificationResult classify(const std::vector<cplx>& r, const AnalysisConfig& cfg);

// same, against a caller-built class table (the table only depends on
// n_total_cdma, 1 + sigma2 and j, so batch runs should build it once)
ClassificationResult classify(const std::vector<cplx>& r, const AnalysisConfig& cfg,
                              const std::vector<ClassStatistics>& table);

}  // namespace cam
