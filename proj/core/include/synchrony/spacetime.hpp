#pragma once

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>

#include "synchrony/errors.hpp"
#include "synchrony/linalg.hpp"

// Natural units throughout: c = 1, and the resynchronization vector is stored
// as the dimensionless product a = alpha * c.

namespace synchrony {

namespace detail {

template <class T>
bool is_finite(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return true;
  }
}

template <class T>
bool is_finite(const Vector3<T>& v) {
  return is_finite(v[0]) && is_finite(v[1]) && is_finite(v[2]);
}

}  // namespace detail

/// A clock-synchronization convention relative to the Einstein-synchronized
/// base frame: t' = t + a.x, x' = x. Any finite a is admissible.
template <class T>
struct BasicSyncParam {
  Vector3<T> a{};
  std::string label = "einstein";

  static BasicSyncParam einstein() { return {}; }

  static BasicSyncParam from_vector(Vector3<T> a, std::string label = "custom") {
    if (!detail::is_finite(a)) throw InvalidArgument("sync param '" + label + "': non-finite component");
    return BasicSyncParam{std::move(a), std::move(label)};
  }

  /// 1+1-D convention: only the x component is set.
  static BasicSyncParam along_x(T a1, std::string label = "custom") {
    return from_vector(Vector3<T>(a1, T(0), T(0)), std::move(label));
  }

  bool is_einstein() const { return a == Vector3<T>::zero(); }
};

/// Conventions are identified by their resynchronization vector; labels are
/// only names.
template <class T>
bool operator==(const BasicSyncParam<T>& lhs, const BasicSyncParam<T>& rhs) {
  return lhs.a == rhs.a;
}

/// A spacetime point with coordinates read off clocks synchronized per
/// `convention`.
template <class T>
struct BasicEvent4 {
  T t{};
  Vector3<T> x{};
  BasicSyncParam<T> convention{};

  static BasicEvent4 make(T t, Vector3<T> x, BasicSyncParam<T> convention = {}) {
    if (!detail::is_finite(t) || !detail::is_finite(x)) throw InvalidArgument("event coordinates must be finite");
    return BasicEvent4{std::move(t), std::move(x), std::move(convention)};
  }

  /// 1+1-D event (y = z = 0).
  static BasicEvent4 make(T t, T x, BasicSyncParam<T> convention = {}) {
    return make(std::move(t), Vector3<T>(x, T(0), T(0)), std::move(convention));
  }

  Vector4<T> coordinates() const { return Vector4<T>(t, x[0], x[1], x[2]); }
};

enum class CausalKind { timelike, lightlike, spacelike };

template <class T>
struct BasicCausalClass {
  CausalKind kind;
  T interval_squared;
};

inline const char* to_string(CausalKind kind) {
  switch (kind) {
    case CausalKind::timelike:
      return "timelike";
    case CausalKind::lightlike:
      return "lightlike";
    case CausalKind::spacelike:
      return "spacelike";
  }
  return "unknown";
}

using SyncParam = BasicSyncParam<double>;
using Event4 = BasicEvent4<double>;
using CausalClass = BasicCausalClass<double>;
using Vec3 = Vector3<double>;
using Vec4 = Vector4<double>;
using Mat4 = Matrix4<double>;

}  // namespace synchrony
