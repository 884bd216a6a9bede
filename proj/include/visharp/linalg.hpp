#pragma once

#include <Eigen/Core>
#include <random>

#include "visharp/errors.hpp"

namespace visharp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline bool is_finite(const Vector& v) { return v.allFinite(); }

inline void check_dim(long expected, const Vector& v) {
  if (v.size() != expected) throw DimensionMismatch(expected, v.size());
}

/// Uniform sample from the unit sphere in `dim` dimensions.
inline Vector random_unit(long dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(dim);
  double n = 0.0;
  do {
    for (long i = 0; i < dim; ++i) u[i] = gauss(rng);
    n = u.norm();
  } while (n < 1e-300);
  return u / n;
}

/// Uniform sample from radius*B around `center`.
inline Vector random_in_ball(const Vector& center, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const long dim = center.size();
  Vector u = random_unit(dim, rng);
  double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(dim));
  return center + r * u;
}

}  // namespace visharp
