// rng.hpp: deterministic seeded random streams. splitmix64 generator with a
// self-contained Box-Muller transform, so seeded runs are bit-identical
// across platforms and standard libraries.
#pragma once

#include <cstdint>

#include "ncball/linalg.hpp"

namespace ncball {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derives an independent stream from (seed, stream) without sharing state.
  static Rng split(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_unit();      // uniform in [0, 1)
  double next_gaussian();  // standard normal
  Complex next_complex_gaussian();
  ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ncball
