#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cam {

using cplx = std::complex<double>;

// error taxonomy shared across modules
struct config_error : std::runtime_error {
    explicit config_error(const std::string& m) : std::runtime_error(m) {}
};
struct argument_error : std::invalid_argument {
    explicit argument_error(const std::string& m) : std::invalid_argument(m) {}
};
struct degenerate_frame_error : std::runtime_error {
    explicit degenerate_frame_error(const std::string& m) : std::runtime_error(m) {}
};
struct insufficient_data_error : std::runtime_error {
    explicit insufficient_data_error(const std::string& m) : std::runtime_error(m) {}
};
struct io_error : std::runtime_error {
    explicit io_error(const std::string& m) : std::runtime_error(m) {}
};

enum class access_t { tdma, ofdma, cdma, contention };

std::string to_string(access_t m);
access_t access_from_string(const std::string& s);

// splitmix64 step; also used to derive independent stream seeds from a master seed
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// 95% Wilson score interval for a binomial proportion
std::pair<double, double> wilson_interval(int successes, int n);

}  // namespace cam
