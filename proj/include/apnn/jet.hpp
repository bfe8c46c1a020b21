#pragma once

#include <cmath>
#include <concepts>

namespace apnn::ad {

/// A value together with its first partials along the two network inputs
/// (space x and time t). Dual-number arithmetic; the scalar type may itself
/// be a tape variable, which gives forward-over-reverse differentiation.
template <class T>
struct BasicJet {
  T value{};
  T d_x{};
  T d_t{};

  BasicJet() = default;
  BasicJet(T v, T dx, T dt) : value(std::move(v)), d_x(std::move(dx)), d_t(std::move(dt)) {}
  // A constant: both partials vanish.
  explicit BasicJet(T v) : value(v), d_x(v * 0.0), d_t(v * 0.0) {}

  static BasicJet seed_x(T v) { return {v, v * 0.0 + 1.0, v * 0.0}; }
  static BasicJet seed_t(T v) { return {v, v * 0.0, v * 0.0 + 1.0}; }
};

using Jet2 = BasicJet<double>;

template <class T>
concept NotDouble = !std::same_as<T, double>;

// jet (+,-,*,/) jet

template <class T>
BasicJet<T> operator+(const BasicJet<T>& a, const BasicJet<T>& b) {
  return {a.value + b.value, a.d_x + b.d_x, a.d_t + b.d_t};
}

template <class T>
BasicJet<T> operator-(const BasicJet<T>& a, const BasicJet<T>& b) {
  return {a.value - b.value, a.d_x - b.d_x, a.d_t - b.d_t};
}

template <class T>
BasicJet<T> operator-(const BasicJet<T>& a) {
  return {-a.value, -a.d_x, -a.d_t};
}

template <class T>
BasicJet<T> operator*(const BasicJet<T>& a, const BasicJet<T>& b) {
  return {a.value * b.value, a.value * b.d_x + b.value * a.d_x,
          a.value * b.d_t + b.value * a.d_t};
}

template <class T>
BasicJet<T> operator/(const BasicJet<T>& a, const BasicJet<T>& b) {
  T inv = 1.0 / b.value;
  T q = a.value * inv;
  return {q, (a.d_x - q * b.d_x) * inv, (a.d_t - q * b.d_t) * inv};
}

// jet (op) scalar of the jet's own type

template <class T>
BasicJet<T> operator+(const BasicJet<T>& a, const T& s) {
  return {a.value + s, a.d_x, a.d_t};
}

template <class T>
BasicJet<T> operator+(const T& s, const BasicJet<T>& a) {
  return a + s;
}

template <class T>
BasicJet<T> operator-(const BasicJet<T>& a, const T& s) {
  return {a.value - s, a.d_x, a.d_t};
}

template <class T>
BasicJet<T> operator-(const T& s, const BasicJet<T>& a) {
  return {s - a.value, -a.d_x, -a.d_t};
}

template <class T>
BasicJet<T> operator*(const BasicJet<T>& a, const T& s) {
  return {a.value * s, a.d_x * s, a.d_t * s};
}

template <class T>
BasicJet<T> operator*(const T& s, const BasicJet<T>& a) {
  return a * s;
}

template <class T>
BasicJet<T> operator/(const BasicJet<T>& a, const T& s) {
  T inv = 1.0 / s;
  return a * inv;
}

// jet (op) double, only needed when the scalar type is not double

template <NotDouble T>
BasicJet<T> operator+(const BasicJet<T>& a, double s) {
  return {a.value + s, a.d_x, a.d_t};
}

template <NotDouble T>
BasicJet<T> operator+(double s, const BasicJet<T>& a) {
  return a + s;
}

template <NotDouble T>
BasicJet<T> operator-(const BasicJet<T>& a, double s) {
  return {a.value - s, a.d_x, a.d_t};
}

template <NotDouble T>
BasicJet<T> operator-(double s, const BasicJet<T>& a) {
  return {s - a.value, -a.d_x, -a.d_t};
}

template <NotDouble T>
BasicJet<T> operator*(const BasicJet<T>& a, double s) {
  return {a.value * s, a.d_x * s, a.d_t * s};
}

template <NotDouble T>
BasicJet<T> operator*(double s, const BasicJet<T>& a) {
  return a * s;
}

template <NotDouble T>
BasicJet<T> operator/(const BasicJet<T>& a, double s) {
  return a * (1.0 / s);
}

// elementary functions (closed-form derivatives)

template <class T>
BasicJet<T> sin(const BasicJet<T>& a) {
  using std::cos;
  using std::sin;
  T c = cos(a.value);
  return {sin(a.value), c * a.d_x, c * a.d_t};
}

template <class T>
BasicJet<T> cos(const BasicJet<T>& a) {
  using std::cos;
  using std::sin;
  T s = -sin(a.value);
  return {cos(a.value), s * a.d_x, s * a.d_t};
}

template <class T>
BasicJet<T> tanh(const BasicJet<T>& a) {
  using std::tanh;
  T th = tanh(a.value);
  T d = 1.0 - th * th;
  return {th, d * a.d_x, d * a.d_t};
}

template <class T>
BasicJet<T> exp(const BasicJet<T>& a) {
  using std::exp;
  T e = exp(a.value);
  return {e, e * a.d_x, e * a.d_t};
}

template <class T>
BasicJet<T> pow(const BasicJet<T>& a, double p) {
  using std::pow;
  T d = p * pow(a.value, p - 1.0);
  return {pow(a.value, p), d * a.d_x, d * a.d_t};
}

inline bool is_finite(const Jet2& j) {
  return std::isfinite(j.value) && std::isfinite(j.d_x) && std::isfinite(j.d_t);
}

}  // namespace apnn::ad
