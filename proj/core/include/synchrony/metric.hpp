#pragma once

#include <string>
#include <utility>

#include "synchrony/spacetime.hpp"

namespace synchrony {

/// Einstein-frame metric diag(1, -1, -1, -1).
template <class T>
Matrix4<T> minkowski() {
  return Matrix4<T>::diagonal(Vector4<T>(T(1), T(-1), T(-1), T(-1)));
}

/// Jacobian d(base)/d(resynchronized): dt = dt' - a.dx', dx = dx'.
template <class T>
Matrix4<T> resync_jacobian(const Vector3<T>& a) {
  Matrix4<T> j = Matrix4<T>::identity();
  for (std::size_t i = 0; i < 3; ++i) j(0, i + 1) = -a[i];
  return j;
}

/// Metric induced by the convention `a`, built as the pullback J^T g J of
/// the Einstein metric. Entries: g00 = 1, g0i = -a_i, gij = a_i a_j - delta_ij.
template <class T>
Matrix4<T> metric_from_alpha(const Vector3<T>& a) {
  const Matrix4<T> j = resync_jacobian(a);
  return j.transpose() * (minkowski<T>() * j);
}

/// Contraction g'_{mu nu} dx^mu dx^nu with the explicit resynchronized
/// metric. Equals the Einstein interval of the base-frame displacement.
template <class T>
T line_element(const Vector4<T>& dx, const Vector3<T>& a) {
  return quadratic_form(metric_from_alpha(a), dx);
}

/// One-way light speed 1 / (1 + a.n) along the unit direction n.
/// Negative values arise for |a.n| > 1: the signal's arrival carries an
/// earlier coordinate time than its departure.
template <class T>
T directional_light_speed(const Vector3<T>& n, const Vector3<T>& a) {
  using std::abs;
  if (abs(n.squared_norm() - T(1)) > T(2e-12)) throw InvalidArgument("direction must be a unit vector");
  const T denom = T(1) + a.dot(n);
  if (denom == T(0)) throw DegenerateConvention("direction lies on a simultaneity surface (1 + a.n = 0)");
  return T(1) / denom;
}

/// Wave four-vector k_mu = (omega, k). Lower-index object: it transforms
/// as k' = k + a*omega, omega' = omega, unlike displacements.
template <class T>
struct BasicWaveFourVector {
  T omega{};
  Vector3<T> k{};
  BasicSyncParam<T> convention{};
};

template <class T>
BasicWaveFourVector<T> transform_wavevector(const BasicWaveFourVector<T>& w, const BasicSyncParam<T>& from,
                                            const BasicSyncParam<T>& to) {
  if (!(w.convention == from)) throw ConventionMismatch("wave vector is not expressed in the 'from' convention");
  const Vector3<T> k_base = w.k - from.a * w.omega;
  return BasicWaveFourVector<T>{w.omega, k_base + to.a * w.omega, to};
}

template <class T>
BasicWaveFourVector<T> transform_wavevector(const BasicWaveFourVector<T>& w, const BasicSyncParam<T>& to) {
  return transform_wavevector(w, w.convention, to);
}

/// omega t - k.x for a wave vector and event in the same convention.
template <class T>
T dot_kx(const BasicWaveFourVector<T>& w, const BasicEvent4<T>& e) {
  if (!(w.convention == e.convention)) throw ConventionMismatch("dot_kx operands use different conventions");
  return w.omega * e.t - w.k.dot(e.x);
}

/// omega'^2 - |k' - a omega'|^2 - m^2; zero iff the base-frame wave is on shell.
template <class T>
T dispersion_check(const BasicWaveFourVector<T>& w, const T& mass) {
  const Vector3<T> k_base = w.k - w.convention.a * w.omega;
  return w.omega * w.omega - k_base.squared_norm() - mass * mass;
}

using WaveFourVector = BasicWaveFourVector<double>;

}  // namespace synchrony
