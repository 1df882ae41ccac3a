#include "cam/constellations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace cam {

double Constellation::avg_power() const {
    double p = 0.0;
    for (auto s : points) p += std::norm(s);
    return points.empty() ? 0.0 : p / double(points.size());
}

namespace {

std::string canon(const std::string& name) {
    std::string out;
    for (char ch : name) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '.') continue;
        out.push_back(char(std::toupper(static_cast<unsigned char>(ch))));
    }
    return out;
}

std::vector<cplx> scaled_unit_power(std::vector<cplx> pts) {
    double p = 0.0;
    for (auto s : pts) p += std::norm(s);
    p /= double(pts.size());
    double g = 1.0 / std::sqrt(p);
    for (auto& s : pts) s *= g;
    return pts;
}

Constellation make(std::string name, std::vector<cplx> pts, symmetry_t sym) {
    return Constellation{std::move(name), scaled_unit_power(std::move(pts)), sym};
}

Constellation make_psk(int m) {
    std::vector<cplx> pts;
    pts.reserve(size_t(m));
    for (int k = 0; k < m; ++k) {
        double ph = (2.0 * k + 1.0) * std::numbers::pi / m;  // 4-PSK lands on (+-1 +-j)/sqrt(2)
        pts.emplace_back(std::cos(ph), std::sin(ph));
    }
    return make(std::to_string(m) + "-PSK", std::move(pts), symmetry_t::four_fold);
}

Constellation make_pam(int m) {
    std::vector<cplx> pts;
    for (int a = -(m - 1); a <= m - 1; a += 2) pts.emplace_back(double(a), 0.0);
    return make(std::to_string(m) + "-PAM", std::move(pts), symmetry_t::real_axis);
}

Constellation make_qam(int side) {
    std::vector<cplx> pts;
    for (int a = -(side - 1); a <= side - 1; a += 2)
        for (int b = -(side - 1); b <= side - 1; b += 2) pts.emplace_back(double(a), double(b));
    return make(std::to_string(side * side) + "-QAM", std::move(pts), symmetry_t::four_fold);
}

Constellation make_v29() {
    std::vector<cplx> pts;
    for (double a : {3.0, 5.0}) {
        pts.emplace_back(a, 0.0);
        pts.emplace_back(-a, 0.0);
        pts.emplace_back(0.0, a);
        pts.emplace_back(0.0, -a);
    }
    for (double a : {1.0, 3.0})
        for (int sx : {1, -1})
            for (int sy : {1, -1}) pts.emplace_back(sx * a, sy * a);
    return make("V29", std::move(pts), symmetry_t::four_fold);
}

Constellation make_v32() {
    std::vector<cplx> pts;  // 6x6 cross: full odd grid minus the four corners
    for (int a = -5; a <= 5; a += 2)
        for (int b = -5; b <= 5; b += 2) {
            if (std::abs(a) == 5 && std::abs(b) == 5) continue;
            pts.emplace_back(double(a), double(b));
        }
    return make("V32", std::move(pts), symmetry_t::four_fold);
}

}  // namespace

Constellation build_constellation(const std::string& name) {
    const std::string n = canon(name);

    if (n == "BPSK" || n == "2-PSK" || n == "2PSK") {
        return Constellation{"BPSK", {cplx(1.0, 0.0), cplx(-1.0, 0.0)}, symmetry_t::real_axis};
    }
    if (n == "QPSK" || n == "4-PSK" || n == "4PSK" || n == "4-QAM" || n == "4QAM" || n == "QAM(2,2)")
        return make_psk(4);
    for (int m : {8, 16, 32, 64}) {
        std::string t = std::to_string(m);
        if (n == t + "-PSK" || n == t + "PSK") return make_psk(m);
    }
    for (int m : {4, 8, 16, 32, 64}) {
        std::string t = std::to_string(m);
        if (n == t + "-PAM" || n == t + "PAM" || n == "PAM(" + t + ")") return make_pam(m);
    }
    for (int side : {4, 8, 16, 32}) {
        std::string sq = std::to_string(side * side);
        std::string t = std::to_string(side);
        if (n == sq + "-QAM" || n == sq + "QAM" || n == "QAM(" + t + "," + t + ")") return make_qam(side);
    }
    if (n == "V29") return make_v29();
    if (n == "V32") return make_v32();
    throw config_error("unknown constellation: " + name);
}

MomentSet moments_of_points(const std::vector<cplx>& pts) {
    if (pts.empty()) throw argument_error("moments_of_points: empty point set");
    MomentSet ms;
    for (int k = 1; k <= 8; ++k) {
        for (int i = 0; i <= k; ++i) {
            cplx acc = 0.0;
            for (auto s : pts) {
                cplx v = 1.0;
                for (int a = 0; a < k - i; ++a) v *= s;
                for (int a = 0; a < i; ++a) v *= std::conj(s);
                acc += v;
            }
            ms.m[k][i] = acc / double(pts.size());
        }
    }
    return ms;
}

MomentSet alphabet_moments(const Constellation& c) { return moments_of_points(c.points); }

MomentSet gaussian_moments(double power) {
    if (power < 0.0) throw argument_error("gaussian_moments: negative power");
    MomentSet ms;
    double fact = 1.0;
    for (int i = 1; i <= 4; ++i) {
        fact *= i;  // E|y|^(2i) = i! * power^i for a circular Gaussian
        ms.m[2 * i][i] = fact * std::pow(power, i);
    }
    return ms;
}

namespace {

// joint moments of x = u + j*v with independent symmetric real parts, given
// their even moments mu(m), mv(m)
MomentSet product_moments(const std::array<double, 9>& mu, const std::array<double, 9>& mv) {
    auto binom = [](int n, int r) {
        double b = 1.0;
        for (int t = 0; t < r; ++t) b = b * (n - t) / (t + 1);
        return b;
    };
    MomentSet ms;
    for (int k = 1; k <= 8; ++k) {
        for (int i = 0; i <= k; ++i) {
            int p = k - i, q = i;
            cplx acc = 0.0;
            for (int r = 0; r <= p; ++r) {
                for (int s = 0; s <= q; ++s) {
                    int ue = r + s, ve = (p - r) + (q - s);
                    if (ue % 2 || ve % 2) continue;  // odd moments vanish
                    cplx jpow = std::pow(cplx(0.0, 1.0), p - r) * std::pow(cplx(0.0, -1.0), q - s);
                    acc += binom(p, r) * binom(q, s) * jpow * mu[size_t(ue)] * mv[size_t(ve)];
                }
            }
            ms.m[k][i] = acc;
        }
    }
    return ms;
}

std::array<double, 9> uniform_even_moments(double half_width) {
    std::array<double, 9> m{};
    m[0] = 1.0;
    for (int e = 2; e <= 8; e += 2) m[size_t(e)] = std::pow(half_width, e) / (e + 1);
    return m;
}

}  // namespace

MomentSet pam_continuum_moments() {
    auto mu = uniform_even_moments(std::sqrt(3.0));  // unit power on the real axis
    std::array<double, 9> mv{};
    mv[0] = 1.0;
    return product_moments(mu, mv);
}

MomentSet qam_continuum_moments() {
    auto m = uniform_even_moments(std::sqrt(1.5));  // each axis carries half the power
    return product_moments(m, m);
}

namespace {

// Visits every partition of {0..n-1}; blocks reported as (size, conjugated count).
// Elements e >= n - nconj carry a conjugate flag.
template <typename F>
void for_each_partition(int n, int nconj, F&& fn) {
    struct Block {
        int size = 0, conj = 0;
    };
    std::array<Block, 8> blocks;
    int nb = 0;

    auto rec = [&](auto&& self, int e) -> void {
        if (e == n) {
            fn(blocks, nb);
            return;
        }
        int cflag = (e >= n - nconj) ? 1 : 0;
        for (int b = 0; b < nb; ++b) {
            blocks[size_t(b)].size += 1;
            blocks[size_t(b)].conj += cflag;
            self(self, e + 1);
            blocks[size_t(b)].size -= 1;
            blocks[size_t(b)].conj -= cflag;
        }
        blocks[size_t(nb)] = {1, cflag};
        ++nb;
        self(self, e + 1);
        --nb;
    };
    rec(rec, 0);
}

constexpr std::array<double, 9> kFactorial = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

}  // namespace

CumulantSet moments_to_cumulants(const MomentSet& m) {
    CumulantSet out;
    for (int k = 1; k <= 8; ++k) {
        for (int i = 0; i <= k; ++i) {
            cplx sum = 0.0;
            for_each_partition(k, i, [&](const auto& blocks, int nb) {
                cplx prod = ((nb - 1) % 2 ? -1.0 : 1.0) * kFactorial[size_t(nb - 1)];
                for (int b = 0; b < nb; ++b) prod *= m.m[size_t(blocks[size_t(b)].size)][size_t(blocks[size_t(b)].conj)];
                sum += prod;
            });
            out.c[k][i] = sum;
        }
    }
    return out;
}

MomentSet cumulants_to_moments(const CumulantSet& c) {
    MomentSet out;
    for (int k = 1; k <= 8; ++k) {
        for (int i = 0; i <= k; ++i) {
            cplx sum = 0.0;
            for_each_partition(k, i, [&](const auto& blocks, int nb) {
                cplx prod = 1.0;
                for (int b = 0; b < nb; ++b) prod *= c.c[size_t(blocks[size_t(b)].size)][size_t(blocks[size_t(b)].conj)];
                sum += prod;
            });
            out.m[k][i] = sum;
        }
    }
    return out;
}

std::vector<ReferenceRow> reference_c42_table() {
    auto c42_of = [](const MomentSet& ms) { return moments_to_cumulants(ms).c42(); };
    auto alpha = [&](const std::string& name) {
        return c42_of(alphabet_moments(build_constellation(name)));
    };

    std::vector<ReferenceRow> rows;
    rows.push_back({"BPSK", alpha("BPSK")});
    for (int m : {4, 8, 16, 32, 64})
        rows.push_back({"PAM(" + std::to_string(m) + ")", alpha(std::to_string(m) + "-PAM")});
    rows.push_back({"PAM(inf)", c42_of(pam_continuum_moments())});
    rows.push_back({"PSK(>=4)", alpha("QPSK")});
    rows.push_back({"V32", alpha("V32")});
    rows.push_back({"V29", alpha("V29")});
    for (int side : {4, 8, 16, 32}) {
        std::string t = std::to_string(side);
        rows.push_back({"QAM(" + t + "," + t + ")", alpha("QAM(" + t + "," + t + ")")});
    }
    rows.push_back({"QAM(inf)", c42_of(qam_continuum_moments())});
    rows.push_back({"BPSK-OFDM", c42_of(gaussian_moments(1.0))});
    rows.push_back({"QPSK-OFDM", c42_of(gaussian_moments(1.0))});
    return rows;
}

}  // namespace cam
