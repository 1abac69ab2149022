#pragma once

// Seeded generator with a portable sampling procedure.
//
// std::uniform_int_distribution is implementation-defined, so reports built on
// it would differ between standard libraries. Sampling here is plain rejection
// on top of std::mt19937_64, whose output sequence is fixed by the standard.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "syzygy/exact_linalg.hpp"

namespace syzygy {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % bound;
  }

  Element element(const PrimeField& field) { return static_cast<Element>(below(field.modulus())); }

  Element nonzero_element(const PrimeField& field) {
    return static_cast<Element>(1 + below(field.modulus() - 1));
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream tag so that independent random choices in
/// one run do not share a sequence.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Raised when a random sample turns out to be special (dependent conditions,
/// degenerate node, wrong quotient dimension). Resampling is the remedy.
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace syzygy
