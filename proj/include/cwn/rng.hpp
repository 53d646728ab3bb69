#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cwn/constants.hpp"

namespace cwn::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seedable N(0,1) stream: mt19937_64 engine (stream seed derived from the run
// seed by splitmix64) feeding the basic Box-Muller transform on uniforms in
// (0,1]. Streams for distinct ids are independent and reproducible.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream_id)
      : eng_(splitmix64(splitmix64(seed) + stream_id)) {}

  double uniform01() {  // (0,1]
    return double((eng_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * kPi * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cwn::rng
