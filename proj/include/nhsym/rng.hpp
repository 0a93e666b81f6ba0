#pragma once

#include <cstdint>
#include <random>

namespace nhsym {

// Deterministic per-path random stream. Streams are keyed by (seed, stream):
// the same key always reproduces the same draw sequence, and distinct stream
// indices give statistically independent sequences.
//
// All distributions are generated from mt19937_64 output through fixed
// explicit transforms (Box-Muller, inversion, Chambers-Mallows-Stuck), not
// through std:: distribution objects, so results are identical across
// standard-library implementations.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() { return gen_(); }

    double uniform01();         // [0, 1)
    double uniform01_strict();  // (0, 1)

    double normal();  // standard normal, Box-Muller with cached spare
    double exponential(double rate = 1.0);

    // Standard symmetric alpha-stable: E e^{i xi X} = e^{-|xi|^alpha}.
    double stable_symmetric(double alpha);

    // One-sided rho-stable subordinator increment, 0 < rho < 1, normalized so
    // that E e^{-u S} = e^{-u^rho}.
    double stable_one_sided(double rho);

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace nhsym
