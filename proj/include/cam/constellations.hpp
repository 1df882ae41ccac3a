#pragma once

#include <array>
#include <string>
#include <vector>

#include "cam/common.hpp"

namespace cam {

enum class symmetry_t { real_axis, four_fold, none };

struct Constellation {
    std::string name;
    std::vector<cplx> points;   // unit average power
    symmetry_t symmetry = symmetry_t::none;

    double avg_power() const;
};

// Supported names: BPSK (2-PSK), M-PSK for M in {4,8,16,32,64}, QPSK,
// M-PAM / PAM(M) for M in {4,8,16,32,64}, 16/64/256/1024-QAM and the
// QAM(a,a) aliases, V29, V32. Throws config_error on anything else.
Constellation build_constellation(const std::string& name);

// dense table of joint moments M(k,i) = E[ y^(k-i) * conj(y)^i ], k <= 8
struct MomentSet {
    std::array<std::array<cplx, 9>, 9> m{};  // m[k][i], valid for i <= k

    cplx get(int k, int i) const { return m[k][i]; }
    void set(int k, int i, cplx v) {         // keeps the conjugate mirror in sync
        m[k][i] = v;
        m[k][k - i] = std::conj(v);
    }

    cplx m20() const { return m[2][0]; }
    double m21() const { return m[2][1].real(); }
    cplx m40() const { return m[4][0]; }
    cplx m41() const { return m[4][1]; }
    double m42() const { return m[4][2].real(); }
    cplx m43() const { return m[4][3]; }
    cplx m62() const { return m[6][2]; }
    double m63() const { return m[6][3].real(); }
    cplx m64() const { return m[6][4]; }
    double m84() const { return m[8][4].real(); }
};

struct CumulantSet {
    std::array<std::array<cplx, 9>, 9> c{};

    cplx get(int k, int i) const { return c[k][i]; }
    void set(int k, int i, cplx v) {
        c[k][i] = v;
        c[k][k - i] = std::conj(v);
    }

    cplx c20() const { return c[2][0]; }
    double c21() const { return c[2][1].real(); }
    cplx c40() const { return c[4][0]; }
    cplx c41() const { return c[4][1]; }
    double c42() const { return c[4][2].real(); }
    cplx c43() const { return c[4][3]; }
    cplx c62() const { return c[6][2]; }
    double c63() const { return c[6][3].real(); }
    cplx c64() const { return c[6][4]; }
    double c84() const { return c[8][4].real(); }
};

// exact averages over the point set (works for any point list, not only unit power)
MomentSet alphabet_moments(const Constellation& c);
MomentSet moments_of_points(const std::vector<cplx>& pts);

// closed-form moment sets for limiting distributions
MomentSet gaussian_moments(double power);      // circularly symmetric complex Gaussian
MomentSet pam_continuum_moments();             // uniform density on [-sqrt(3), sqrt(3)]
MomentSet qam_continuum_moments();             // uniform density on a unit-power square

// full Moebius inversion over set partitions (orders up to 8)
CumulantSet moments_to_cumulants(const MomentSet& m);
MomentSet cumulants_to_moments(const CumulantSet& c);

struct ReferenceRow {
    std::string name;
    double c42;
};

// normalized fourth-order cumulant of each supported alphabet family, computed
// from the moment engine (nothing hard-coded)
std::vector<ReferenceRow> reference_c42_table();

}  // namespace cam
