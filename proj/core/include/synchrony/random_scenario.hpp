#pragma once

#include <cstdint>
#include <random>

#include "synchrony/quantum.hpp"

namespace synchrony::quantum {

/// Seeded generator of random commuting scenarios and measurement settings.
/// Hermitian parts come from Gaussian entries, H = (G + G^dagger) / 2.
class ScenarioGenerator {
 public:
  explicit ScenarioGenerator(std::uint64_t seed) : rng_(seed) {}

  Matrix gaussian(int rows, int cols);
  Matrix hermitian(int n);
  Matrix unitary(int n);
  Vector unit_vector(int n);

  /// H_int = 0, random local Hamiltonians and operators, times sorted so that
  /// t_in <= t_A, t_B <= t_out with t_A and t_B in random relative order.
  QuantumScenario commuting(int dim_a, int dim_b);

  /// Random projective measurement: a random orthonormal basis whose vectors
  /// are grouped into between 2 and n outcomes (n >= 2).
  MeasurementSetting measurement(int n);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace synchrony::quantum
