#pragma once

#include <vector>

#include "cam/common.hpp"

namespace cam {

// per-frame raw estimates (computed after centering)
struct FrameEstimate {
    double c42 = 0.0;  // M42 - |M20|^2 - 2*M21^2
    double c21 = 0.0;  // mean |y|^2
    cplx c20;          // mean y^2
};

std::vector<cplx> center_signal(const std::vector<cplx>& r);

FrameEstimate estimate_c42_frame(const std::vector<cplx>& y);

// c42 / (c21 - sigma2)^2 with a power-margin check: requires
// c21 - sigma2 > 0.05 * sigma2 (strictly positive when sigma2 == 0)
double normalize_c42(double c42_hat, double c21_hat, double sigma2);

// sample-granular gate: keeps samples whose centered moving-average power
// (window samples wide) exceeds kappa * sigma2
std::vector<cplx> squelch(const std::vector<cplx>& r, double sigma2, double kappa = 2.0,
                          int window = 32);

// rough noise floor from the gate-rejected population; optional helper, the
// pipeline always uses the configured sigma2
double estimate_noise_floor(const std::vector<cplx>& r, double sigma2_init, double kappa = 2.0,
                            int window = 32);

struct FrameSeries {
    std::vector<double> values;  // normalized per-frame c42
    std::vector<double> rho;     // per-frame c21 / (c21 - sigma2)
    std::vector<double> power;   // per-frame mean |y|^2 before centering
    int frame_length = 0;
    double noise_variance = 0.0;
    int frames_used = 0;
};

// Splits r into consecutive j-sample blocks, keeps blocks whose mean power
// exceeds kappa * sigma2 (block-granular gating: frames never straddle an
// occupancy or fading boundary when transmissions are slot-aligned), then
// centers and estimates each kept block until f frames are collected.
// Throws insufficient_data_error if fewer than 2 blocks survive.
FrameSeries frame_series(const std::vector<cplx>& r, int j, int f, double sigma2,
                         double kappa = 2.0);

}  // namespace cam
