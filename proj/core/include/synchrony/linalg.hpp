#pragma once

#include <array>
#include <cstddef>
#include <utility>

// Small fixed-size vectors and matrices, generic over the scalar type so the
// same expressions evaluate in double or in exact rationals. Summation order
// is fixed (left to right) for reproducible rounding.

namespace synchrony {

template <class T, std::size_t N>
class Vec {
 public:
  constexpr Vec() {
    for (auto& v : c_) v = T(0);
  }

  template <class... Args>
    requires(sizeof...(Args) == N && N > 1)
  constexpr Vec(Args&&... args) : c_{T(std::forward<Args>(args))...} {}

  static constexpr Vec zero() { return Vec(); }

  static constexpr Vec unit(std::size_t i) {
    Vec v;
    v[i] = T(1);
    return v;
  }

  constexpr T& operator[](std::size_t i) { return c_[i]; }
  constexpr const T& operator[](std::size_t i) const { return c_[i]; }
  static constexpr std::size_t size() { return N; }

  constexpr T dot(const Vec& o) const {
    T s = c_[0] * o.c_[0];
    for (std::size_t i = 1; i < N; ++i) s = s + c_[i] * o.c_[i];
    return s;
  }

  constexpr T squared_norm() const { return dot(*this); }

  constexpr Vec operator-() const {
    Vec r;
    for (std::size_t i = 0; i < N; ++i) r[i] = -c_[i];
    return r;
  }

  friend constexpr Vec operator+(const Vec& a, const Vec& b) {
    Vec r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
    return r;
  }

  friend constexpr Vec operator-(const Vec& a, const Vec& b) {
    Vec r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
  }

  friend constexpr Vec operator*(const Vec& a, const T& s) {
    Vec r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] * s;
    return r;
  }

  friend constexpr Vec operator*(const T& s, const Vec& a) { return a * s; }

  friend constexpr bool operator==(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < N; ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

 private:
  std::array<T, N> c_;
};

template <class T, std::size_t N>
class SquareMatrix {
 public:
  constexpr SquareMatrix() {
    for (auto& row : m_)
      for (auto& v : row) v = T(0);
  }

  static constexpr SquareMatrix zero() { return SquareMatrix(); }

  static constexpr SquareMatrix identity() {
    SquareMatrix r;
    for (std::size_t i = 0; i < N; ++i) r(i, i) = T(1);
    return r;
  }

  static constexpr SquareMatrix diagonal(const Vec<T, N>& d) {
    SquareMatrix r;
    for (std::size_t i = 0; i < N; ++i) r(i, i) = d[i];
    return r;
  }

  constexpr T& operator()(std::size_t i, std::size_t j) { return m_[i][j]; }
  constexpr const T& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  static constexpr std::size_t size() { return N; }

  constexpr SquareMatrix transpose() const {
    SquareMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(i, j) = m_[j][i];
    return r;
  }

  friend constexpr SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        T s = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < N; ++k) s = s + a(i, k) * b(k, j);
        r(i, j) = s;
      }
    return r;
  }

  friend constexpr Vec<T, N> operator*(const SquareMatrix& a, const Vec<T, N>& v) {
    Vec<T, N> r;
    for (std::size_t i = 0; i < N; ++i) {
      T s = a(i, 0) * v[0];
      for (std::size_t k = 1; k < N; ++k) s = s + a(i, k) * v[k];
      r[i] = s;
    }
    return r;
  }

  friend constexpr bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (!(a(i, j) == b(i, j))) return false;
    return true;
  }

  /// Gaussian elimination with partial pivoting; exact for rational T.
  T determinant() const {
    using std::abs;
    auto a = m_;
    T det = T(1);
    for (std::size_t col = 0; col < N; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < N; ++r)
        if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
      if (a[pivot][col] == T(0)) return T(0);
      if (pivot != col) {
        std::swap(a[pivot], a[col]);
        det = -det;
      }
      det = det * a[col][col];
      for (std::size_t r = col + 1; r < N; ++r) {
        const T f = a[r][col] / a[col][col];
        for (std::size_t c = col; c < N; ++c) a[r][c] = a[r][c] - f * a[col][c];
      }
    }
    return det;
  }

 private:
  std::array<std::array<T, N>, N> m_;
};

/// v^T M v.
template <class T, std::size_t N>
constexpr T quadratic_form(const SquareMatrix<T, N>& m, const Vec<T, N>& v) {
  return v.dot(m * v);
}

template <class T>
using Vector3 = Vec<T, 3>;
template <class T>
using Vector4 = Vec<T, 4>;
template <class T>
using Matrix4 = SquareMatrix<T, 4>;

}  // namespace synchrony
