#include "cam/common.hpp"

#include <cmath>

namespace cam {

std::string to_string(access_t m) {
    switch (m) {
        case access_t::tdma: return "tdma";
        case access_t::ofdma: return "ofdma";
        case access_t::cdma: return "cdma";
        case access_t::contention: return "contention";
    }
    return "?";
}

access_t access_from_string(const std::string& s) {
    if (s == "tdma") return access_t::tdma;
    if (s == "ofdma") return access_t::ofdma;
    if (s == "cdma") return access_t::cdma;
    if (s == "contention") return access_t::contention;
    throw config_error("unknown access method: " + s);
}

std::pair<double, double> wilson_interval(int successes, int n) {
    if (n <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5% normal quantile
    double p = double(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    double lo = center - half, hi = center + half;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

}  // namespace cam
