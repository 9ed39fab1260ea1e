#pragma once

#include <utility>

#include "synchrony/metric.hpp"
#include "synchrony/spacetime.hpp"

namespace synchrony {

/// Re-expresses `e` in convention `to`. Routes through the Einstein base:
/// t_base = t - a_from.x, then t' = t_base + a_to.x; spatial coordinates are
/// untouched.
template <class T>
BasicEvent4<T> resynchronize(const BasicEvent4<T>& e, const BasicSyncParam<T>& from, const BasicSyncParam<T>& to) {
  if (!(e.convention == from)) throw ConventionMismatch("event is not expressed in the 'from' convention");
  const T t_base = e.t - from.a.dot(e.x);
  return BasicEvent4<T>{t_base + to.a.dot(e.x), e.x, to};
}

template <class T>
BasicEvent4<T> resynchronize(const BasicEvent4<T>& e, const BasicSyncParam<T>& to) {
  return resynchronize(e, e.convention, to);
}

template <class T>
BasicEvent4<T> to_einstein(const BasicEvent4<T>& e) {
  return resynchronize(e, BasicSyncParam<T>::einstein());
}

/// Maps an Einstein-convention velocity v to v / (1 + a v) (1+1-D).
/// For v = +-1 this gives the one-way light speeds +-1 / (1 +- a).
template <class T>
T one_way_velocity(const T& v, const T& a) {
  const T denom = T(1) + a * v;
  if (denom == T(0)) throw DegenerateConvention("worldline lies on a simultaneity surface (1 + a v = 0)");
  return v / denom;
}

/// Out-and-back time over a length L, each speed measured along its own leg.
/// For |a| > 1 one leg runs backwards in coordinate time and its speed is
/// negative; the sum still comes out at 2L.
template <class T>
T round_trip_time(const T& length, const T& v_out, const T& v_back) {
  if (!(length > T(0))) throw InvalidArgument("round_trip_time requires a positive length");
  if (v_out == T(0) || v_back == T(0) || !detail::is_finite(v_out) || !detail::is_finite(v_back))
    throw InvalidArgument("round_trip_time requires finite, nonzero speeds");
  return length / v_out + length / v_back;
}

/// Winnie's synchronization parameter: epsilon = (1 + a) / 2, so that the
/// Einstein convention sits at epsilon = 1/2.
template <class T>
T winnie_epsilon(const T& a) {
  return (T(1) + a) / T(2);
}

template <class T>
T epsilon_to_a(const T& epsilon) {
  return T(2) * epsilon - T(1);
}

namespace detail {

template <class T>
void require_convention(const BasicEvent4<T>& e, const BasicSyncParam<T>& p) {
  if (!(e.convention == p)) throw ConventionMismatch("event is not expressed in the requested convention");
}

}  // namespace detail

/// Classifies the separation of two events using the metric of convention p.
/// |s^2| < 1e-9 (dt^2 + |dx|^2) counts as lightlike.
template <class T>
BasicCausalClass<T> classify_separation(const BasicEvent4<T>& e1, const BasicEvent4<T>& e2,
                                        const BasicSyncParam<T>& p) {
  using std::abs;
  detail::require_convention(e1, p);
  detail::require_convention(e2, p);
  const Vector4<T> delta = e2.coordinates() - e1.coordinates();
  const T s2 = line_element(delta, p.a);
  const T scale = delta.squared_norm();
  CausalKind kind = CausalKind::lightlike;
  if (!(abs(s2) < T(1e-9) * scale)) kind = s2 > T(0) ? CausalKind::timelike : CausalKind::spacelike;
  return BasicCausalClass<T>{kind, s2};
}

enum class TimeOrder { first_earlier, second_earlier, simultaneous };

inline const char* to_string(TimeOrder order) {
  switch (order) {
    case TimeOrder::first_earlier:
      return "first";
    case TimeOrder::second_earlier:
      return "second";
    case TimeOrder::simultaneous:
      return "tie";
  }
  return "unknown";
}

/// Which event carries the smaller coordinate time in convention p. Makes no
/// claim about causal order.
template <class T>
TimeOrder coordinate_order(const BasicEvent4<T>& e1, const BasicEvent4<T>& e2, const BasicSyncParam<T>& p) {
  detail::require_convention(e1, p);
  detail::require_convention(e2, p);
  if (e1.t < e2.t) return TimeOrder::first_earlier;
  if (e2.t < e1.t) return TimeOrder::second_earlier;
  return TimeOrder::simultaneous;
}

}  // namespace synchrony
