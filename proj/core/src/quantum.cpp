#include "synchrony/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace synchrony::quantum {

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

Vector basis_state(int n, int i) {
  if (i < 0 || i >= n) throw DimensionMismatch("basis index out of range");
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

Vector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
  return r;
}

Matrix embed_a(const Matrix& op, int dim_b) { return kron(op, Matrix::Identity(dim_b, dim_b)); }

Matrix embed_b(int dim_a, const Matrix& op) { return kron(Matrix::Identity(dim_a, dim_a), op); }

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs_entry(m - m.adjoint()) <= tol;
}

double commutator_norm(const Matrix& x, const Matrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw DimensionMismatch("commutator_norm needs square operators of equal dimension");
  return max_abs_entry(x * y - y * x);
}

Evolution::Evolution(const Matrix& h) {
  if (!is_hermitian(h)) throw InvalidArgument("generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw InvalidArgument("eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Vector Evolution::apply(const Vector& state, double dt) const {
  if (state.size() != dim()) throw DimensionMismatch("state dimension does not match the generator");
  if (dt == 0.0) return state;
  Vector coeffs = eigenvectors_.adjoint() * state;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) *= std::exp(Complex(0.0, -eigenvalues_(i) * dt));
  return eigenvectors_ * coeffs;
}

Matrix Evolution::unitary(double dt) const {
  Vector phases(dim());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(Complex(0.0, -eigenvalues_(i) * dt));
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Vector evolve(const Vector& state, const Matrix& h, double dt) {
  if (h.rows() != state.size()) throw DimensionMismatch("state dimension does not match the generator");
  return Evolution(h).apply(state, dt);
}

const char* to_string(Order order) { return order == Order::a_first ? "A-first" : "B-first"; }

namespace {

void require_shape(const Matrix& m, int n, const char* name) {
  if (m.rows() != n || m.cols() != n)
    throw DimensionMismatch(std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

void require_commuting(const QuantumScenario& s) {
  if (s.interacting()) throw InvalidArgument("factored amplitude requires H_int = 0");
}

}  // namespace

bool QuantumScenario::interacting() const { return h_int.has_value() && max_abs_entry(*h_int) > 0.0; }

Matrix QuantumScenario::full_hamiltonian() const {
  Matrix h = embed_a(h_a, dim_b) + embed_b(dim_a, h_b);
  if (h_int) h += *h_int;
  return h;
}

void QuantumScenario::validate() const {
  if (dim_a < 1 || dim_b < 1) throw InvalidArgument("subsystem dimensions must be positive");
  require_shape(h_a, dim_a, "H_A");
  require_shape(h_b, dim_b, "H_B");
  require_shape(o_a, dim_a, "O_A");
  require_shape(o_b, dim_b, "O_B");
  if (h_int) require_shape(*h_int, dim(), "H_int");
  if (!is_hermitian(h_a)) throw InvalidArgument("H_A is not Hermitian");
  if (!is_hermitian(h_b)) throw InvalidArgument("H_B is not Hermitian");
  if (h_int && !is_hermitian(*h_int)) throw InvalidArgument("H_int is not Hermitian");
  if (psi_in.size() != dim()) throw DimensionMismatch("psi_in has the wrong dimension");
  if (psi_out.size() != dim()) throw DimensionMismatch("psi_out has the wrong dimension");
  if (std::abs(psi_in.norm() - 1.0) > kNormTolerance) throw InvalidArgument("psi_in is not normalized");
  if (std::abs(psi_out.norm() - 1.0) > kNormTolerance) throw InvalidArgument("psi_out is not normalized");
  const auto [lo, hi] = std::minmax(times.t_a, times.t_b);
  if (!(times.t_in <= lo && hi <= times.t_out)) throw InvalidArgument("times must satisfy t_in <= t_A, t_B <= t_out");
}

Vector apply_on_a(const Matrix& op, const Vector& state, int dim_a, int dim_b) {
  if (op.rows() != dim_a || op.cols() != dim_a || state.size() != dim_a * dim_b)
    throw DimensionMismatch("operator does not act on subsystem A");
  Eigen::Map<const Matrix> view(state.data(), dim_b, dim_a);
  Vector out(state.size());
  Eigen::Map<Matrix>(out.data(), dim_b, dim_a) = view * op.transpose();
  return out;
}

Vector apply_on_b(const Matrix& op, const Vector& state, int dim_a, int dim_b) {
  if (op.rows() != dim_b || op.cols() != dim_b || state.size() != dim_a * dim_b)
    throw DimensionMismatch("operator does not act on subsystem B");
  Eigen::Map<const Matrix> view(state.data(), dim_b, dim_a);
  Vector out(state.size());
  Eigen::Map<Matrix>(out.data(), dim_b, dim_a) = op * view;
  return out;
}

Complex amplitude_ordered(const QuantumScenario& s, Order order) {
  s.validate();
  const Evolution u(s.full_hamiltonian());
  const bool a_first = order == Order::a_first;
  const double t_early = a_first ? s.times.t_a : s.times.t_b;
  const double t_late = a_first ? s.times.t_b : s.times.t_a;

  auto apply_a = [&](const Vector& v) { return apply_on_a(s.o_a, v, s.dim_a, s.dim_b); };
  auto apply_b = [&](const Vector& v) { return apply_on_b(s.o_b, v, s.dim_a, s.dim_b); };

  Vector psi = u.apply(s.psi_in, t_early - s.times.t_in);
  psi = a_first ? apply_a(psi) : apply_b(psi);
  psi = u.apply(psi, t_late - t_early);
  psi = a_first ? apply_b(psi) : apply_a(psi);
  psi = u.apply(psi, s.times.t_out - t_late);
  return s.psi_out.dot(psi);
}

namespace {

struct LocalChain {
  Matrix before;  // exp(-i H_X (t_X - t_in))
  Matrix op;
  Matrix after;   // exp(-i H_X (t_out - t_X))

  Matrix dressed() const { return after * op * before; }
};

LocalChain chain_a(const QuantumScenario& s) {
  const Evolution u(s.h_a);
  return {u.unitary(s.times.t_a - s.times.t_in), s.o_a, u.unitary(s.times.t_out - s.times.t_a)};
}

LocalChain chain_b(const QuantumScenario& s) {
  const Evolution u(s.h_b);
  return {u.unitary(s.times.t_b - s.times.t_in), s.o_b, u.unitary(s.times.t_out - s.times.t_b)};
}

}  // namespace

Complex amplitude_factored(const QuantumScenario& s, Order order) {
  s.validate();
  require_commuting(s);
  const LocalChain a = chain_a(s);
  const LocalChain b = chain_b(s);

  auto run_a = [&](Vector v) {
    for (const Matrix* m : {&a.before, &a.op, &a.after}) v = apply_on_a(*m, v, s.dim_a, s.dim_b);
    return v;
  };
  auto run_b = [&](Vector v) {
    for (const Matrix* m : {&b.before, &b.op, &b.after}) v = apply_on_b(*m, v, s.dim_a, s.dim_b);
    return v;
  };

  const Vector psi = order == Order::a_first ? run_b(run_a(s.psi_in)) : run_a(run_b(s.psi_in));
  return s.psi_out.dot(psi);
}

Complex amplitude_heisenberg(const QuantumScenario& s, Order order) {
  s.validate();
  require_commuting(s);
  const Matrix heis_a = embed_a(chain_a(s).dressed(), s.dim_b);
  const Matrix heis_b = embed_b(s.dim_a, chain_b(s).dressed());
  const Matrix product = order == Order::a_first ? Matrix(heis_b * heis_a) : Matrix(heis_a * heis_b);
  return s.psi_out.dot(product * s.psi_in);
}

std::vector<double> marginal_distribution(const QuantumScenario& s, const MeasurementSetting* remote,
                                          const MeasurementSetting& local) {
  s.validate();
  if (remote && remote->dim() != s.dim_a) throw DimensionMismatch("remote setting does not act on subsystem A");
  if (local.dim() != s.dim_b) throw DimensionMismatch("local setting does not act on subsystem B");

  const Evolution u(s.full_hamiltonian());
  const Vector at_a = u.apply(s.psi_in, s.times.t_a - s.times.t_in);

  std::vector<Vector> branches;
  if (remote) {
    for (const Matrix& p : remote->projectors()) branches.push_back(apply_on_a(p, at_a, s.dim_a, s.dim_b));
  } else {
    branches.push_back(at_a);
  }

  std::vector<double> probs(local.outcomes(), 0.0);
  for (const Vector& branch : branches) {
    const Vector at_b = u.apply(branch, s.times.t_b - s.times.t_a);
    for (std::size_t k = 0; k < local.outcomes(); ++k)
      probs[k] += apply_on_b(local.projectors()[k], at_b, s.dim_a, s.dim_b).squaredNorm();
  }
  return probs;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionMismatch("distributions have different supports");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

Matrix spin_observable(double theta) { return std::cos(theta) * pauli::z() + std::sin(theta) * pauli::x(); }

double correlator(const Vector& state, double angle_a, double angle_b) {
  if (state.size() != 4) throw DimensionMismatch("correlator needs a two-qubit state");
  const Vector rotated =
      apply_on_b(spin_observable(angle_b), apply_on_a(spin_observable(angle_a), state, 2, 2), 2, 2);
  return state.dot(rotated).real();
}

double chsh_value(const Vector& state, std::array<double, 2> angles_a, std::array<double, 2> angles_b) {
  return correlator(state, angles_a[0], angles_b[0]) + correlator(state, angles_a[0], angles_b[1]) +
         correlator(state, angles_a[1], angles_b[0]) - correlator(state, angles_a[1], angles_b[1]);
}

}  // namespace synchrony::quantum
