#pragma once

// Exact rational arithmetic for the templated kinematics and metric code.
// Every finite double converts to a rational without loss, so identities that
// hold algebraically can be checked with no rounding at all.

#include <boost/multiprecision/cpp_int.hpp>

#include "synchrony/spacetime.hpp"

namespace synchrony {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Rational to_rational(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("cannot represent a non-finite value exactly");
  return Rational(v);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Vector3<Rational> to_rational(const Vec3& v) {
  return Vector3<Rational>(to_rational(v[0]), to_rational(v[1]), to_rational(v[2]));
}

inline BasicSyncParam<Rational> to_rational(const SyncParam& p) {
  return BasicSyncParam<Rational>{to_rational(p.a), p.label};
}

inline BasicEvent4<Rational> to_rational(const Event4& e) {
  return BasicEvent4<Rational>{to_rational(e.t), to_rational(e.x), to_rational(e.convention)};
}

}  // namespace synchrony
