//! \file weno.hpp
//! Scalar WENO reconstruction kernels of order 2r-1 for r = 3 (WENO5) and
//! r = 5 (WENO9), classical smoothness-indicator weighting.
//!
//! A window holds 2r-1 cell-average values; the center cell has index r-1.
//! weno_left<K> returns the reconstructed point value at the *right* face of
//! the center cell biased from the left; weno_right<K> is its exact mirror
//! (value at the left face biased from the right), implemented by reversing
//! the window so mirrored data reproduce mirrored results bit for bit.

#ifndef SRHD_WENO_HPP_
#define SRHD_WENO_HPP_

#include <span>

#include "srhd/errors.hpp"

namespace srhd {

// Regularization of the nonlinear weights.
inline constexpr double weno_epsilon = 1e-6;

namespace weno_detail {

// Candidate stencil S_s covers cells {center-s, ..., center-s+K-1}; c[s][j]
// multiplies the j-th cell of that stencil, d[s] is the linear weight. The
// K = 3 entries are the classical fifth-order ones, K = 5 the ninth-order
// extension; smoothness indicators follow the usual sum over derivative
// L2 norms of the candidate polynomials.
template <int K>
struct Tables;

template <>
struct Tables<3> {
  static constexpr double c[3][3] = {
      {1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0},
      {-1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0},
      {1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0},
  };
  static constexpr double d[3] = {3.0 / 10.0, 3.0 / 5.0, 1.0 / 10.0};

  static inline void betas(const double* w, double* beta) {
    // v0..v2 run left to right within each stencil
    {
      const double v0 = w[2], v1 = w[3], v2 = w[4];
      const double a = v0 - 2.0 * v1 + v2;
      const double b = 3.0 * v0 - 4.0 * v1 + v2;
      beta[0] = 13.0 / 12.0 * a * a + 0.25 * b * b;
    }
    {
      const double v0 = w[1], v1 = w[2], v2 = w[3];
      const double a = v0 - 2.0 * v1 + v2;
      const double b = v0 - v2;
      beta[1] = 13.0 / 12.0 * a * a + 0.25 * b * b;
    }
    {
      const double v0 = w[0], v1 = w[1], v2 = w[2];
      const double a = v0 - 2.0 * v1 + v2;
      const double b = v0 - 4.0 * v1 + 3.0 * v2;
      beta[2] = 13.0 / 12.0 * a * a + 0.25 * b * b;
    }
  }
};

template <>
struct Tables<5> {
  static constexpr double c[5][5] = {
      {1.0 / 5.0, 77.0 / 60.0, -43.0 / 60.0, 17.0 / 60.0, -1.0 / 20.0},
      {-1.0 / 20.0, 9.0 / 20.0, 47.0 / 60.0, -13.0 / 60.0, 1.0 / 30.0},
      {1.0 / 30.0, -13.0 / 60.0, 47.0 / 60.0, 9.0 / 20.0, -1.0 / 20.0},
      {-1.0 / 20.0, 17.0 / 60.0, -43.0 / 60.0, 77.0 / 60.0, 1.0 / 5.0},
      {1.0 / 5.0, -21.0 / 20.0, 137.0 / 60.0, -163.0 / 60.0, 137.0 / 60.0},
  };
  static constexpr double d[5] = {5.0 / 126.0, 20.0 / 63.0, 10.0 / 21.0,
                                  10.0 / 63.0, 1.0 / 126.0};

  // Quadratic forms sum_{i<=j} q[t] v_i v_j, pair order (0,0),(0,1)..(4,4).
  static constexpr double q[5][15] = {
      {53959.0 / 2520.0, -649501.0 / 5040.0, 252941.0 / 1680.0,
       -411487.0 / 5040.0, 86329.0 / 5040.0, 1020563.0 / 5040.0,
       -68391.0 / 140.0, 679229.0 / 2520.0, -288007.0 / 5040.0,
       507131.0 / 1680.0, -142033.0 / 420.0, 121621.0 / 1680.0,
       482963.0 / 5040.0, -208501.0 / 5040.0, 11329.0 / 2520.0},
      {11329.0 / 2520.0, -140251.0 / 5040.0, 55051.0 / 1680.0,
       -88297.0 / 5040.0, 18079.0 / 5040.0, 242723.0 / 5040.0,
       -25499.0 / 210.0, 168509.0 / 2520.0, -70237.0 / 5040.0,
       135431.0 / 1680.0, -3229.0 / 35.0, 33071.0 / 1680.0,
       138563.0 / 5040.0, -60871.0 / 5040.0, 1727.0 / 1260.0},
      {1727.0 / 1260.0, -51001.0 / 5040.0, 7547.0 / 560.0, -38947.0 / 5040.0,
       8209.0 / 5040.0, 104963.0 / 5040.0, -24923.0 / 420.0, 89549.0 / 2520.0,
       -38947.0 / 5040.0, 77051.0 / 1680.0, -24923.0 / 420.0, 7547.0 / 560.0,
       104963.0 / 5040.0, -51001.0 / 5040.0, 1727.0 / 1260.0},
      {1727.0 / 1260.0, -60871.0 / 5040.0, 33071.0 / 1680.0,
       -70237.0 / 5040.0, 18079.0 / 5040.0, 138563.0 / 5040.0, -3229.0 / 35.0,
       168509.0 / 2520.0, -88297.0 / 5040.0, 135431.0 / 1680.0,
       -25499.0 / 210.0, 55051.0 / 1680.0, 242723.0 / 5040.0,
       -140251.0 / 5040.0, 11329.0 / 2520.0},
      {11329.0 / 2520.0, -208501.0 / 5040.0, 121621.0 / 1680.0,
       -288007.0 / 5040.0, 86329.0 / 5040.0, 482963.0 / 5040.0,
       -142033.0 / 420.0, 679229.0 / 2520.0, -411487.0 / 5040.0,
       507131.0 / 1680.0, -68391.0 / 140.0, 252941.0 / 1680.0,
       1020563.0 / 5040.0, -649501.0 / 5040.0, 53959.0 / 2520.0},
  };

  static inline void betas(const double* w, double* beta) {
    for (int s = 0; s < 5; ++s) {
      const double* v = w + 4 - s;  // leftmost cell of stencil S_s
      double acc = 0.0;
      int t = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j, ++t) acc += q[s][t] * v[i] * v[j];
      beta[s] = acc;
    }
  }
};

}  // namespace weno_detail

// Nonlinear weights for a window of 2K-1 values; omega has K entries that are
// nonnegative and sum to one.
template <int K>
inline void weno_weights(const double* w, double* omega) {
  using T = weno_detail::Tables<K>;
  double beta[K];
  T::betas(w, beta);
  double sum = 0.0;
  for (int s = 0; s < K; ++s) {
    const double r = weno_epsilon + beta[s];
    omega[s] = T::d[s] / (r * r);
    sum += omega[s];
  }
  const double inv = 1.0 / sum;
  for (int s = 0; s < K; ++s) omega[s] *= inv;
}

template <int K>
inline double weno_left(const double* w) {
  using T = weno_detail::Tables<K>;
  double omega[K];
  weno_weights<K>(w, omega);
  double value = 0.0;
  for (int s = 0; s < K; ++s) {
    const double* v = w + K - 1 - s;  // stencil S_s starts at center-s
    double cand = 0.0;
    for (int j = 0; j < K; ++j) cand += T::c[s][j] * v[j];
    value += omega[s] * cand;
  }
  return value;
}

template <int K>
inline double weno_right(const double* w) {
  double rev[2 * K - 1];
  for (int i = 0; i < 2 * K - 1; ++i) rev[i] = w[2 * K - 2 - i];
  return weno_left<K>(rev);
}

// Runtime-dispatch wrappers; window.size() must equal 2r-1, r in {3, 5}.
inline double weno_left_value(std::span<const double> window, int r) {
  if (r == 3 && window.size() == 5) return weno_left<3>(window.data());
  if (r == 5 && window.size() == 9) return weno_left<5>(window.data());
  throw ConfigError("weno_left_value: r must be 3 or 5 with a 2r-1 window");
}

inline double weno_right_value(std::span<const double> window, int r) {
  if (r == 3 && window.size() == 5) return weno_right<3>(window.data());
  if (r == 5 && window.size() == 9) return weno_right<5>(window.data());
  throw ConfigError("weno_right_value: r must be 3 or 5 with a 2r-1 window");
}

}  // namespace srhd

#endif  // SRHD_WENO_HPP_
