#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace confcert {

/// Fixed-size Euclidean vector. Dimension is 2 or 3 everywhere in this library.
template <std::size_t N>
using Vec = std::array<double, N>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <std::size_t N>
constexpr Vec<N> operator+(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator-(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator-(const Vec<N>& a) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = -a[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator*(double s, const Vec<N>& a) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator*(const Vec<N>& a, double s) {
  return s * a;
}

template <std::size_t N>
constexpr Vec<N>& operator+=(Vec<N>& a, const Vec<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
inline double norm(const Vec<N>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t N>
inline double distance(const Vec<N>& a, const Vec<N>& b) {
  return norm(a - b);
}

/// Returns a / |a|; the zero vector is returned unchanged.
template <std::size_t N>
inline Vec<N> normalized(const Vec<N>& a) {
  const double n = norm(a);
  return n > 0.0 ? (1.0 / n) * a : a;
}

constexpr double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Some unit vector orthogonal to the unit vector n.
inline Vec3 any_orthogonal(const Vec3& n) {
  const Vec3 axis = std::abs(n[0]) < 0.6 ? Vec3{1, 0, 0} : (std::abs(n[1]) < 0.6 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  return normalized(cross(n, axis));
}

inline Vec2 any_orthogonal(const Vec2& n) { return {-n[1], n[0]}; }

}  // namespace confcert
