//! \file characteristic.hpp
//! Local characteristic decomposition at cell interfaces.
//!
//! The flux Jacobian A = dF/dU is assembled analytically through primitive
//! variables, A = (dF/dV) (dU/dV)^{-1}, at the arithmetic average of the two
//! adjacent primitive states. Eigenvalues are known in closed form, so right
//! eigenvectors come from nullspaces of (A - lambda I); this avoids a general
//! eigensolver in the hot path and keeps the construction deterministic. On
//! any degeneracy (rank defect, failed inverse, R R^{-1} far from I) the basis
//! falls back to the identity and flags it.

#ifndef SRHD_CHARACTERISTIC_HPP_
#define SRHD_CHARACTERISTIC_HPP_

#include "srhd/linalg.hpp"
#include "srhd/state.hpp"

namespace srhd {

// dU/dV with V = (rho, v_1..v_Dim, p); row order (D, m_1..m_Dim, E).
template <int Dim>
inline Mat<Dim + 2> primitive_jacobian(const Prim<Dim>& V,
                                       const EosParams& eos) {
  constexpr int N = Dim + 2;
  const double g = eos.gamma / (eos.gamma - 1.0);
  const double W = lorentz_factor<Dim>(V.v);
  const double W2 = W * W;
  const double rhoh = V.rho + g * V.p;
  Mat<N> J;
  J.a[0][0] = W;
  for (int j = 0; j < Dim; ++j) J.a[0][1 + j] = V.rho * W2 * W * V.v[j];
  J.a[0][N - 1] = 0.0;
  for (int i = 0; i < Dim; ++i) {
    J.a[1 + i][0] = W2 * V.v[i];
    for (int j = 0; j < Dim; ++j) {
      J.a[1 + i][1 + j] =
          rhoh * W2 * (2.0 * W2 * V.v[i] * V.v[j] + (i == j ? 1.0 : 0.0));
    }
    J.a[1 + i][N - 1] = g * W2 * V.v[i];
  }
  J.a[N - 1][0] = W2;
  for (int j = 0; j < Dim; ++j) J.a[N - 1][1 + j] = 2.0 * rhoh * W2 * W2 * V.v[j];
  J.a[N - 1][N - 1] = g * W2 - 1.0;
  return J;
}

// dF_axis/dV, same variable ordering.
template <int Dim>
inline Mat<Dim + 2> flux_primitive_jacobian(const Prim<Dim>& V,
                                            const EosParams& eos, int axis) {
  constexpr int N = Dim + 2;
  const Mat<N> JU = primitive_jacobian(V, eos);
  const double va = V.v[axis];
  const double W = lorentz_factor<Dim>(V.v);
  const double W2 = W * W;
  const double g = eos.gamma / (eos.gamma - 1.0);
  const double rhoh = V.rho + g * V.p;
  const double D = V.rho * W;
  Mat<N> J;
  // rho D v_a row
  J.a[0][0] = W * va;
  for (int j = 0; j < Dim; ++j)
    J.a[0][1 + j] = V.rho * W2 * W * V.v[j] * va + (j == axis ? D : 0.0);
  J.a[0][N - 1] = 0.0;
  // momentum rows: m_i v_a + p delta_{ia}
  for (int i = 0; i < Dim; ++i) {
    const double mi = rhoh * W2 * V.v[i];
    J.a[1 + i][0] = W2 * V.v[i] * va;
    for (int j = 0; j < Dim; ++j)
      J.a[1 + i][1 + j] =
          JU.a[1 + i][1 + j] * va + (j == axis ? mi : 0.0);
    J.a[1 + i][N - 1] = g * W2 * V.v[i] * va + (i == axis ? 1.0 : 0.0);
  }
  // energy row: flux component is m_axis
  for (int j = 0; j < N; ++j) J.a[N - 1][j] = JU.a[1 + axis][j];
  return J;
}

// A = dF_axis/dU evaluated at V.
template <int Dim>
inline Mat<Dim + 2> flux_jacobian(const Prim<Dim>& V, const EosParams& eos,
                                  int axis) {
  Mat<Dim + 2> JUinv;
  if (!invert(primitive_jacobian(V, eos), JUinv)) {
    throw DomainError("flux_jacobian: singular dU/dV");
  }
  return matmul(flux_primitive_jacobian(V, eos, axis), JUinv);
}

template <int Dim>
struct CharacteristicBasis {
  Mat<Dim + 2> R = Mat<Dim + 2>::identity();
  Mat<Dim + 2> Rinv = Mat<Dim + 2>::identity();
  bool identity_fallback = false;
};

namespace detail {
inline constexpr double basis_nullspace_tol = 1e-9;
inline constexpr double basis_identity_tol = 1e-10;
}  // namespace detail

template <int Dim>
inline CharacteristicBasis<Dim> characteristic_basis(const Prim<Dim>& VL,
                                                     const Prim<Dim>& VR,
                                                     const EosParams& eos,
                                                     int axis) {
  constexpr int N = Dim + 2;
  Prim<Dim> Va;
  Va.rho = 0.5 * (VL.rho + VR.rho);
  Va.p = 0.5 * (VL.p + VR.p);
  for (int i = 0; i < Dim; ++i) Va.v[i] = 0.5 * (VL.v[i] + VR.v[i]);

  CharacteristicBasis<Dim> basis;
  basis.identity_fallback = true;  // cleared only on a validated decomposition
  const Mat<N> A = flux_jacobian(Va, eos, axis);
  const WaveSpeeds ws = wave_speeds(Va, eos, axis);
  const double lambdas[3] = {ws.lambda_minus, ws.lambda_mid, ws.lambda_plus};
  const int multiplicity[3] = {1, Dim, 1};

  Mat<N> R;
  int col = 0;
  for (int group = 0; group < 3; ++group) {
    Mat<N> Ashift = A;
    for (int i = 0; i < N; ++i) Ashift.a[i][i] -= lambdas[group];
    Vec<N> vecs[Dim];
    const int got =
        nullspace(Ashift, detail::basis_nullspace_tol, vecs, multiplicity[group]);
    if (got < multiplicity[group]) return basis;  // identity fallback stays set
    for (int k = 0; k < multiplicity[group]; ++k, ++col)
      for (int i = 0; i < N; ++i) R.a[i][col] = vecs[k][i];
  }

  Mat<N> Rinv;
  if (!invert(R, Rinv)) return basis;
  const Mat<N> P = matmul(R, Rinv);
  Mat<N> err = P;
  for (int i = 0; i < N; ++i) err.a[i][i] -= 1.0;
  if (mat_norm_inf(err) > detail::basis_identity_tol) return basis;

  basis.R = R;
  basis.Rinv = Rinv;
  basis.identity_fallback = false;
  return basis;
}

template <int Dim>
inline CharacteristicBasis<Dim> identity_basis() {
  return CharacteristicBasis<Dim>{};
}

}  // namespace srhd

#endif  // SRHD_CHARACTERISTIC_HPP_
