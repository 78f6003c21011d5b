#include "ncball/rng.hpp"

#include <cmath>
#include <numbers>

namespace ncball {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::split(std::uint64_t seed, std::uint64_t stream) {
  return Rng(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)));
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - next_unit();  // in (0, 1], keeps log finite
  const double u2 = next_unit();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(ang);
  has_spare_ = true;
  return mag * std::cos(ang);
}

Complex Rng::next_complex_gaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return Complex(re, im);
}

ComplexMatrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = next_complex_gaussian();
  return M;
}

}  // namespace ncball
