#ifndef FUZEV_RANDOM_HPP
#define FUZEV_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

#include "fuzev/numerics.hpp"

namespace fuzev {

// Seeded stream with hand-rolled output mappings so that a given seed
// reproduces the same draws regardless of standard-library vendor.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }

  // Standard normal via Box-Muller; the spare deviate is cached.
  double gauss() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_positive()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  // Uniform integer in [0, n). Modulo bias is < n / 2^64.
  std::uint64_t integer(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Stable per-cell seed from a master seed and a textual tag, so adding a
// roster entry never perturbs the streams of the others.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
  std::string key = std::to_string(master);
  key += '|';
  key += tag;
  return fnv1a64(key);
}

}  // namespace fuzev

#endif
