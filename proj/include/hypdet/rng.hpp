#pragma once

// Seeded randomness. One generator type used everywhere so that a stored
// seed reproduces every sampled verdict and report byte for byte. Draw
// order is part of that contract: callers must consume values in a fixed
// sequence regardless of early exits.

#include <cmath>
#include <cstdint>
#include <random>

#include "complexmat.hpp"

namespace hypdet {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Box-Muller; two uniforms per draw, no cached second value (keeps the
  // stream position a pure function of the number of calls)
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1], log is safe
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  cd cnormal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

  // integer in [lo, hi)
  long integer(long lo, long hi) {
    long span = hi - lo;
    long v = lo + long(uniform() * double(span));
    return v >= hi ? hi - 1 : v;
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace hypdet
