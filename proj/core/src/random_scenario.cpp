#include "synchrony/random_scenario.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace synchrony::quantum {

Matrix ScenarioGenerator::gaussian(int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng_);
      const double im = normal(rng_);
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix ScenarioGenerator::hermitian(int n) {
  const Matrix g = gaussian(n, n);
  return 0.5 * (g + g.adjoint());
}

Matrix ScenarioGenerator::unitary(int n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

Vector ScenarioGenerator::unit_vector(int n) {
  Vector v = gaussian(n, 1).col(0);
  return v / v.norm();
}

QuantumScenario ScenarioGenerator::commuting(int dim_a, int dim_b) {
  QuantumScenario s;
  s.dim_a = dim_a;
  s.dim_b = dim_b;
  s.h_a = hermitian(dim_a);
  s.h_b = hermitian(dim_b);
  s.o_a = gaussian(dim_a, dim_a);
  s.o_b = gaussian(dim_b, dim_b);
  s.psi_in = unit_vector(s.dim());
  s.psi_out = unit_vector(s.dim());

  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::array<double, 4> t{};
  for (double& v : t) v = uniform(rng_);
  std::sort(t.begin(), t.end());
  const bool swap = uniform(rng_) < 0.5;
  s.times = Times{t[0], swap ? t[2] : t[1], swap ? t[1] : t[2], t[3]};
  return s;
}

MeasurementSetting ScenarioGenerator::measurement(int n) {
  if (n < 2) throw InvalidArgument("random measurement needs dimension >= 2");
  const Matrix basis = unitary(n);
  std::uniform_int_distribution<int> groups_dist(2, n);
  const int groups = groups_dist(rng_);

  // Every outcome receives at least one basis vector; the rest are spread at random.
  std::vector<int> owner(n);
  std::iota(owner.begin(), owner.begin() + groups, 0);
  std::uniform_int_distribution<int> pick(0, groups - 1);
  for (int j = groups; j < n; ++j) owner[j] = pick(rng_);
  std::shuffle(owner.begin(), owner.end(), rng_);

  std::vector<Matrix> projectors(groups, Matrix::Zero(n, n));
  for (int j = 0; j < n; ++j) projectors[owner[j]] += basis.col(j) * basis.col(j).adjoint();
  return MeasurementSetting::from_projectors(std::move(projectors));
}

}  // namespace synchrony::quantum
