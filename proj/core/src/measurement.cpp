#include <cmath>
#include <string>

#include "synchrony/quantum.hpp"

namespace synchrony::quantum {

MeasurementSetting MeasurementSetting::from_projectors(std::vector<Matrix> projectors) {
  if (projectors.empty()) throw InvalidArgument("measurement setting needs at least one projector");
  const Eigen::Index n = projectors.front().rows();
  Matrix total = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    const Matrix& p = projectors[k];
    const std::string which = "projector " + std::to_string(k);
    if (p.rows() != n || p.cols() != n) throw InvalidArgument(which + " has the wrong shape");
    if (!is_hermitian(p)) throw InvalidArgument(which + " is not Hermitian");
    if (max_abs_entry(p * p - p) > kHermitianTolerance) throw InvalidArgument(which + " is not idempotent");
    total += p;
  }
  if (max_abs_entry(total - Matrix::Identity(n, n)) > kHermitianTolerance)
    throw InvalidArgument("projectors do not sum to the identity");
  return MeasurementSetting(std::move(projectors));
}

MeasurementSetting MeasurementSetting::from_basis(const Matrix& unitary_columns) {
  std::vector<Matrix> projectors;
  for (Eigen::Index j = 0; j < unitary_columns.cols(); ++j)
    projectors.push_back(unitary_columns.col(j) * unitary_columns.col(j).adjoint());
  return from_projectors(std::move(projectors));
}

MeasurementSetting MeasurementSetting::pauli_basis(char axis) {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix basis(2, 2);
  switch (axis) {
    case 'z':
      basis = Matrix::Identity(2, 2);
      break;
    case 'x':
      basis << r, r, r, -r;
      break;
    case 'y':
      basis << r, r, Complex(0, r), Complex(0, -r);
      break;
    default:
      throw InvalidArgument(std::string("unknown Pauli axis '") + axis + "'");
  }
  return from_basis(basis);
}

MeasurementSetting MeasurementSetting::spin_angle(double theta) {
  const Matrix sigma = spin_observable(theta);
  const Matrix id = Matrix::Identity(2, 2);
  return from_projectors({0.5 * (id + sigma), 0.5 * (id - sigma)});
}

}  // namespace synchrony::quantum
