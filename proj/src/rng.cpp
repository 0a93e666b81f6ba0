#include "nhsym/rng.hpp"

#include "nhsym/common.hpp"

#include <cmath>

namespace nhsym {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    // Mix seed and stream index into independent seed material.
    std::uint64_t state = seed ^ (0x632BE59BD9B4E019ull + stream * 0xD1342543DE82EF95ull);
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        const std::uint64_t w = splitmix64(state);
        words[2 * i] = static_cast<std::uint32_t>(w);
        words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words, words + 8);
    gen_.seed(seq);
}

double RngStream::uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform01_strict() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01_strict();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double RngStream::exponential(double rate) {
    return -std::log(uniform01_strict()) / rate;
}

double RngStream::stable_symmetric(double alpha) {
    const double v = kPi * (uniform01_strict() - 0.5);
    const double w = exponential(1.0);
    if (alpha == 1.0) return std::tan(v);
    const double t = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
    const double s = std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
    return t * s;
}

double RngStream::stable_one_sided(double rho) {
    const double v = kPi * (uniform01_strict() - 0.5);
    const double w = exponential(1.0);
    const double theta = v + kPi / 2.0;  // in (0, pi)
    const double t = std::sin(rho * theta) / std::pow(std::cos(v), 1.0 / rho);
    const double s = std::pow(std::cos(v - rho * theta) / w, (1.0 - rho) / rho);
    // Rescale from Laplace exponent sec(pi rho/2) u^rho to plain u^rho.
    return t * s * std::pow(std::cos(kPi * rho / 2.0), 1.0 / rho);
}

}  // namespace nhsym
