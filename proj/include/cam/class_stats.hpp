#pragma once

#include <array>
#include <string>
#include <vector>

#include "cam/common.hpp"
#include "cam/constellations.hpp"

namespace cam {

// Variance of the per-frame normalized cumulant as a function of the noisy
// power ratio rho = C21 / (C21 - sigma2). Every closed form here is a quartic
// polynomial in rho, so five samples pin it exactly; stored as Lagrange data.
struct VarModel {
    static constexpr std::array<double, 5> nodes{1.0, 1.25, 1.5, 1.75, 2.0};
    std::array<double, 5> table_g{};  // J*var assuming the normalizer is known exactly
    std::array<double, 5> frame_g{};  // J*var when the normalizer is estimated per frame
    double extra = 0.0;               // additive J*var from sample duplication/pairing
    bool valid = false;

    double jvar_table(double rho) const;
    double jvar_frame(double rho) const;
};

struct ClassStatistics {
    std::string label;
    access_t method = access_t::tdma;
    std::string modulation;
    double mean = 0.0;
    double var = 0.0;  // variance of one frame's normalized c42 at the table rho
    int j = 0;
    double rho = 1.0;
    VarModel model;
};

// general asymptotic variance of the frame estimate from the composite moment
// set (signal plus noise, any symmetry)
double general_c42_variance(const MomentSet& m, int j);

// same, corrected for the fact that the normalizing power is itself estimated
// from the frame (delta method; requires unit signal power so C21 - sigma2 = 1)
double normalized_c42_variance(const MomentSet& m, int j);

// closed forms for noisy real-axis and four-fold alphabets; c holds the
// noise-free unit-power signal cumulants, rho >= 1 the noisy power ratio
double noisy_variance_real(const CumulantSet& c, double rho, int j);
double noisy_variance_fourfold(const CumulantSet& c, double rho, int j);

// builds both variance curves from a unit-power signal cumulant set
VarModel make_var_model(const CumulantSet& signal, double extra = 0.0);

ClassStatistics ofdm_statistics(const std::string& subcarrier_mod, double rho, int j,
                                int n_sc = 64, int n_p = 4);

ClassStatistics cdma_statistics(int n_total, double rho, int j,
                                const std::string& chip_data_mod = "BPSK");

struct UserStat {
    double c21 = 0.0;
    double c42 = 0.0;
    double var = 0.0;
};

// mean and variance of the composite statistic for users with unequal powers
std::pair<double, double> multiuser_statistics(const std::vector<UserStat>& users, double sigma2,
                                               int j);

struct MixtureComponent {
    double weight = 0.0;
    double mean = 0.0;
    double var = 0.0;
};

// law-of-total-variance pooling of per-state statistics
std::pair<double, double> mixture_statistics(const std::vector<MixtureComponent>& comps);

// the 15-row operating table: M1..M10 slotted single-carrier alphabets,
// M11/M12 multicarrier, M13..M15 spread composites of n_total_cdma users
std::vector<ClassStatistics> build_class_table(int n_total_cdma, double rho, int j);

}  // namespace cam
