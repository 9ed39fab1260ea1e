#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "synchrony/errors.hpp"

// Finite-dimensional bipartite quantum mechanics with hbar = 1. Joint states
// live on C^dimA (x) C^dimB with the Kronecker index convention
// i = iA * dimB + iB.

namespace synchrony::quantum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

/// |i> in dimension n.
Vector basis_state(int n, int i);
/// (|01> - |10>) / sqrt(2).
Vector singlet();

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// op (x) I_dimB
Matrix embed_a(const Matrix& op, int dim_b);
/// I_dimA (x) op
Matrix embed_b(int dim_a, const Matrix& op);

double max_abs_entry(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermitianTolerance);

/// Largest-magnitude entry of XY - YX.
double commutator_norm(const Matrix& x, const Matrix& y);

/// Cached eigendecomposition H = V diag(lambda) V^dagger; exp(-iH dt) is
/// applied as V diag(exp(-i lambda dt)) V^dagger.
class Evolution {
 public:
  explicit Evolution(const Matrix& h);

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  Vector apply(const Vector& state, double dt) const;
  Matrix unitary(double dt) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

/// exp(-i H dt) state.
Vector evolve(const Vector& state, const Matrix& h, double dt);

enum class Order { a_first, b_first };

const char* to_string(Order order);

struct Times {
  double t_in = 0.0;
  double t_a = 0.0;
  double t_b = 0.0;
  double t_out = 0.0;
};

/// Two observers A and B acting on their own tensor factors, with
/// H = H_A (x) I + I (x) H_B + H_int.
struct QuantumScenario {
  int dim_a = 2;
  int dim_b = 2;
  Matrix h_a;
  Matrix h_b;
  std::optional<Matrix> h_int;
  Matrix o_a;
  Matrix o_b;
  Times times;
  Vector psi_in;
  Vector psi_out;

  int dim() const { return dim_a * dim_b; }
  /// True when H_int is present with any nonzero entry.
  bool interacting() const;
  Matrix full_hamiltonian() const;

  /// Throws DimensionMismatch or InvalidArgument when an invariant fails.
  void validate() const;
};

/// <psi_out| U(t_out - t_late) O_late U(t_late - t_early) O_early U(t_early - t_in) |psi_in>
/// under the full Hamiltonian. `order` names the operator applied first; each
/// operator keeps its own time label, so segments may run backwards.
Complex amplitude_ordered(const QuantumScenario& s, Order order);

/// Same amplitude from independent local evolutions, one factor per
/// subsystem. Requires H_int = 0.
Complex amplitude_factored(const QuantumScenario& s, Order order);

/// <psi_out| O_late(t_late) O_early(t_early) |psi_in> with
/// O_X(t) = exp(-i H_X (t_out - t)) O_X exp(-i H_X (t - t_in)) embedded on the
/// joint space. Requires H_int = 0.
Complex amplitude_heisenberg(const QuantumScenario& s, Order order);

/// A complete set of orthogonal projectors on one subsystem.
class MeasurementSetting {
 public:
  /// Validates idempotence, Hermiticity and completeness to 1e-12.
  static MeasurementSetting from_projectors(std::vector<Matrix> projectors);
  /// Rank-1 projectors onto the columns of a unitary.
  static MeasurementSetting from_basis(const Matrix& unitary_columns);
  /// Qubit eigenbasis of sigma_x, sigma_y or sigma_z ('x', 'y', 'z').
  static MeasurementSetting pauli_basis(char axis);
  /// Qubit spin along cos(theta) z + sin(theta) x; outcomes ordered (+1, -1).
  static MeasurementSetting spin_angle(double theta);

  int dim() const { return static_cast<int>(projectors_.front().rows()); }
  std::size_t outcomes() const { return projectors_.size(); }
  const std::vector<Matrix>& projectors() const { return projectors_; }

 private:
  explicit MeasurementSetting(std::vector<Matrix> projectors) : projectors_(std::move(projectors)) {}
  std::vector<Matrix> projectors_;
};

/// B's outcome distribution at t_B. When `remote` is present, A performs a
/// non-selective projective measurement at t_A (outcome discarded, branches
/// summed). The measurement is inserted before B's readout whatever the
/// numeric order of t_A and t_B; a later t_A means a backwards segment.
/// Defined for interacting scenarios too, where it can signal.
std::vector<double> marginal_distribution(const QuantumScenario& s, const MeasurementSetting* remote,
                                          const MeasurementSetting& local);

double total_variation(std::span<const double> p, std::span<const double> q);

/// Spin observable cos(theta) sigma_z + sin(theta) sigma_x.
Matrix spin_observable(double theta);

/// <psi| sigma(a) (x) sigma(b) |psi> for a two-qubit state.
double correlator(const Vector& state, double angle_a, double angle_b);

/// S = E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2).
double chsh_value(const Vector& state, std::array<double, 2> angles_a, std::array<double, 2> angles_b);

/// State-vector helpers on the reshaped dimB x dimA view of a joint state.
Vector apply_on_a(const Matrix& op, const Vector& state, int dim_a, int dim_b);
Vector apply_on_b(const Matrix& op, const Vector& state, int dim_a, int dim_b);

}  // namespace synchrony::quantum
