//! \file vec.hpp
//! Fixed-size double vectors used for states and fluxes.

#ifndef SRHD_VEC_HPP_
#define SRHD_VEC_HPP_

#include <cmath>

namespace srhd {

template <int N>
struct Vec {
  double a[N] = {};

  constexpr double& operator[](int i) { return a[i]; }
  constexpr double operator[](int i) const { return a[i]; }
  static constexpr int size() { return N; }

  constexpr Vec& operator+=(const Vec& o) {
    for (int i = 0; i < N; ++i) a[i] += o.a[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (int i = 0; i < N; ++i) a[i] -= o.a[i];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    for (int i = 0; i < N; ++i) a[i] *= s;
    return *this;
  }

  friend constexpr Vec operator+(Vec x, const Vec& y) { return x += y; }
  friend constexpr Vec operator-(Vec x, const Vec& y) { return x -= y; }
  friend constexpr Vec operator*(double s, Vec x) { return x *= s; }
  friend constexpr Vec operator*(Vec x, double s) { return x *= s; }
  friend constexpr Vec operator-(Vec x) {
    for (int i = 0; i < N; ++i) x.a[i] = -x.a[i];
    return x;
  }
};

template <int N>
constexpr double dot(const Vec<N>& x, const Vec<N>& y) {
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += x.a[i] * y.a[i];
  return s;
}

template <int N>
inline double norm2(const Vec<N>& x) {
  return std::sqrt(dot(x, x));
}

template <int N>
inline double norm_inf(const Vec<N>& x) {
  double s = 0.0;
  for (int i = 0; i < N; ++i) s = std::max(s, std::fabs(x.a[i]));
  return s;
}

}  // namespace srhd

#endif  // SRHD_VEC_HPP_
