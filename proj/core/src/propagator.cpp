#include "synchrony/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace synchrony::propagator {

namespace {

using Real = long double;
using ComplexL = std::complex<Real>;
using Vec3L = std::array<Real, 3>;

Vec3L widen(const Vec3& v) { return {Real(v[0]), Real(v[1]), Real(v[2])}; }

Real dot(const Vec3L& a, const Vec3L& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Real denominator(Real omega, const Vec3L& k, Real mass) { return omega * omega - dot(k, k) - mass * mass; }

ComplexL integrand(Real phase, Real denom, Real eps) {
  return ComplexL(std::cos(phase), -std::sin(phase)) / ComplexL(denom, eps);
}

Complex narrow(const ComplexL& z) { return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag())); }

// omega (t - a.x) - k.x with every quantity already widened.
Real third_phase(Real omega, const Vec3L& k, Real t, const Vec3L& x, const Vec3L& a) {
  return omega * (t - dot(a, x)) - dot(k, x);
}

}  // namespace

void PropagatorPoint::validate() const {
  if (!(eps > 0.0)) throw InvalidArgument("propagator regulator eps must be positive");
  if (!(mass >= 0.0)) throw InvalidArgument("propagator mass must be non-negative");
}

long double phase_einstein(const MomentumSample& k, const Event4& x) {
  return Real(k.omega) * Real(x.t) - dot(widen(k.k), widen(x.x));
}

long double phase_resynced(const MomentumSample& k, const Event4& x) {
  return third_phase(Real(k.omega), widen(k.k), Real(x.t), widen(x.x), widen(x.convention.a));
}

Complex integrand_einstein(const MomentumSample& k, const PropagatorPoint& p) {
  p.validate();
  if (!p.x.convention.is_einstein()) throw ConventionMismatch("integrand_einstein needs an Einstein-convention point");
  const Real denom = denominator(Real(k.omega), widen(k.k), Real(p.mass));
  return narrow(integrand(phase_einstein(k, p.x), denom, Real(p.eps)));
}

Complex integrand_resynced(const MomentumSample& k, const PropagatorPoint& p) {
  p.validate();
  const Real denom = denominator(Real(k.omega), widen(k.k), Real(p.mass));
  return narrow(integrand(phase_resynced(k, p.x), denom, Real(p.eps)));
}

Complex integrand_middle(const MomentumSample& k, const PropagatorPoint& p) {
  p.validate();
  const Real omega = k.omega;
  const Vec3L kp = widen(k.k);
  const Vec3L a = widen(p.x.convention.a);
  const Vec3L shifted{kp[0] - a[0] * omega, kp[1] - a[1] * omega, kp[2] - a[2] * omega};
  const Real phase = omega * Real(p.x.t) - dot(kp, widen(p.x.x));
  return narrow(integrand(phase, denominator(omega, shifted, Real(p.mass)), Real(p.eps)));
}

MomentumSample shift_to_unprimed(const MomentumSample& k, const SyncParam& convention) {
  return MomentumSample{k.omega, k.k - convention.a * k.omega};
}

std::pair<Complex, Complex> middle_form_check(const MomentumSample& k, const PropagatorPoint& p) {
  p.validate();
  const Real omega = k.omega;
  const Vec3L kp = widen(k.k);
  const Vec3L a = widen(p.x.convention.a);
  const Vec3L x = widen(p.x.x);
  const Vec3L k2{kp[0] - a[0] * omega, kp[1] - a[1] * omega, kp[2] - a[2] * omega};
  const Real denom = denominator(omega, k2, Real(p.mass));

  const Real third = third_phase(omega, k2, Real(p.x.t), x, a);
  return {integrand_middle(k, p), narrow(integrand(third, denom, Real(p.eps)))};
}

double relative_gap(Complex z1, Complex z2) {
  const double scale = std::max(std::abs(z1), std::abs(z2));
  if (scale == 0.0) return 0.0;
  return std::abs(z1 - z2) / scale;
}

Complex propagator_quadrature_1p1(double t, double x, double mass, double eps, double a, const QuadratureGrid& grid) {
  if (!(grid.cutoff > 0.0)) throw InvalidArgument("quadrature cutoff must be positive");
  if (grid.n < 64) throw InvalidArgument("quadrature grid needs n >= 64");

  const SyncParam convention = SyncParam::along_x(a, "quadrature");
  PropagatorPoint point{Event4::make(t + a * x, x, convention), mass, eps};
  point.validate();

  const Real h = Real(2.0 * grid.cutoff) / Real(grid.n);
  const Vec3L xs = widen(point.x.x);
  const Vec3L as = widen(convention.a);
  ComplexL sum(0.0L, 0.0L);
  for (int i = 0; i < grid.n; ++i) {
    const Real omega = -Real(grid.cutoff) + h * (Real(i) + 0.5L);
    for (int j = 0; j < grid.n; ++j) {
      const Vec3L k{-Real(grid.cutoff) + h * (Real(j) + 0.5L), 0.0L, 0.0L};
      const Real phase = third_phase(omega, k, Real(point.x.t), xs, as);
      sum += integrand(phase, denominator(omega, k, Real(mass)), Real(eps));
    }
  }
  return narrow(sum * h * h);
}

}  // namespace synchrony::propagator
