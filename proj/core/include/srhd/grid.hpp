//! \file grid.hpp
//! Uniform structured grids with ghost layers, boundary-condition fills and
//! the solid mask used for internal reflecting walls.
//!
//! Planar axes are cell centered: x_i = origin + (i + 1/2) dx for interior
//! index i in [0, n). The axisymmetric radial axis follows the r_j = j dr
//! point layout (j = i + 1 >= 1), so the innermost interface sits at dr/2 and
//! the axis fill mirrors interior cells across it like a reflecting wall with
//! the radial momentum negated. Ghost cells use indices [-ng, 0) and
//! [n, n + ng).

#ifndef SRHD_GRID_HPP_
#define SRHD_GRID_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "srhd/state.hpp"

namespace srhd {

enum class Geometry { planar, axisymmetric };

enum class BoundaryKind { periodic, outflow, reflective, inflow, axis };

// One side of one axis. Inflow holds a precomputed conserved state applied
// where the transverse cell-center coordinate lies in the closed interval
// [mask_lo, mask_hi]; outside the mask the side degrades to outflow. 1D
// inflow ignores the mask.
template <int Dim>
struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::outflow;
  ConsVec<Dim> inflow_state{};
  double mask_lo = -1e300;
  double mask_hi = 1e300;
};

template <int Dim>
using Field = std::vector<ConsVec<Dim>>;

template <int Dim>
struct FieldGrid {
  std::array<int, Dim> n{};       // interior cells per axis
  int ng = 3;                     // ghost width (>= reconstruction radius r)
  std::array<double, Dim> origin{};
  std::array<double, Dim> dx{};
  Geometry geometry = Geometry::planar;
  std::array<std::array<BoundaryCondition<Dim>, 2>, Dim> bc{};  // [axis][side]
  Field<Dim> cells;               // padded storage, x fastest
  std::vector<std::uint8_t> solid;  // padded; empty = all fluid

  int pad(int axis) const { return n[axis] + 2 * ng; }

  std::size_t total() const {
    std::size_t t = 1;
    for (int a = 0; a < Dim; ++a) t *= static_cast<std::size_t>(pad(a));
    return t;
  }

  // Flat index from ghost-inclusive cell indices (each in [-ng, n+ng)).
  std::size_t flat(int i) const
    requires(Dim == 1)
  {
    return static_cast<std::size_t>(i + ng);
  }
  std::size_t flat(int i, int j) const
    requires(Dim == 2)
  {
    return static_cast<std::size_t>(j + ng) * pad(0) +
           static_cast<std::size_t>(i + ng);
  }

  bool is_solid(std::size_t f) const { return !solid.empty() && solid[f]; }

  // Cell-center coordinate along one axis (works for ghost indices too).
  double center(int axis, int k) const {
    if (geometry == Geometry::axisymmetric && axis == 0) {
      return (k + 1) * dx[0];
    }
    return origin[axis] + (k + 0.5) * dx[axis];
  }

  // Radius of the cell used by the axisymmetric source and A_s.
  double radius(int i) const { return (i + 1) * dx[0]; }

  void allocate() {
    cells.assign(total(), ConsVec<Dim>{});
    solid.clear();
  }

  void validate() const {
    for (int a = 0; a < Dim; ++a) {
      if (n[a] < 1) throw ConfigError("grid: cell count must be positive");
      if (!(dx[a] > 0.0)) throw ConfigError("grid: spacing must be positive");
    }
    if (ng < 1) throw ConfigError("grid: ghost width must be positive");
    if (geometry == Geometry::axisymmetric) {
      if (Dim != 2) throw ConfigError("grid: axisymmetric geometry needs 2D");
      if (origin[0] != 0.0)
        throw ConfigError("grid: axisymmetric radial origin must be 0");
    }
    for (int a = 0; a < Dim; ++a) {
      const bool lo_p = bc[a][0].kind == BoundaryKind::periodic;
      const bool hi_p = bc[a][1].kind == BoundaryKind::periodic;
      if (lo_p != hi_p)
        throw ConfigError("grid: periodic boundaries must be paired");
      for (int side = 0; side < 2; ++side) {
        if (bc[a][side].kind == BoundaryKind::axis) {
          if (geometry != Geometry::axisymmetric || a != 0 || side != 0)
            throw ConfigError(
                "grid: axis boundary only valid on the r=0 side of an "
                "axisymmetric grid");
        }
        if (bc[a][side].kind == BoundaryKind::inflow &&
            !is_admissible<Dim>(bc[a][side].inflow_state))
          throw ConfigError("grid: inflow state is not admissible");
      }
    }
    if (!solid.empty() && solid.size() != total())
      throw ConfigError("grid: solid mask size mismatch");
  }
};

namespace detail {

// Fill the two ghost bands of one pencil. `at(k)` maps the pencil coordinate
// k in [-ng, n+ng) to a state reference; `solid_at(k)` tests the mask;
// `tcoord` is the transverse cell-center coordinate for inflow masking.
template <int Dim, class At>
inline void fill_pencil_bounds(const FieldGrid<Dim>& g, int axis,
                               double tcoord, const At& at) {
  const int n = g.n[axis];
  const int ng = g.ng;
  for (int side = 0; side < 2; ++side) {
    const BoundaryCondition<Dim>& b = g.bc[axis][side];
    for (int k = 0; k < ng; ++k) {
      const int ghost = side == 0 ? -1 - k : n + k;
      switch (b.kind) {
        case BoundaryKind::periodic:
          at(ghost) = at(side == 0 ? n - 1 - k : k);
          break;
        case BoundaryKind::outflow:
          at(ghost) = at(side == 0 ? 0 : n - 1);
          break;
        case BoundaryKind::reflective:
        case BoundaryKind::axis: {
          ConsVec<Dim> v = at(side == 0 ? k : n - 1 - k);
          v[1 + axis] = -v[1 + axis];
          at(ghost) = v;
          break;
        }
        case BoundaryKind::inflow:
          if (Dim == 1 || (tcoord >= b.mask_lo && tcoord <= b.mask_hi)) {
            at(ghost) = b.inflow_state;
          } else {
            at(ghost) = at(side == 0 ? 0 : n - 1);
          }
          break;
      }
    }
  }
}

// Mirror-fill the near-face cells of every solid run of one pencil so the
// sweep along `axis` sees reflecting-wall values. When a run is shorter than
// 2 ng the cell takes the value mirrored across its nearest face.
template <int Dim, class At, class SolidAt>
inline void fill_pencil_solid(const FieldGrid<Dim>& g, int axis,
                              const At& at, const SolidAt& solid_at) {
  const int n = g.n[axis];
  const int ng = g.ng;
  const int lo = -ng, hi = n + ng;
  int k = lo;
  while (k < hi) {
    if (!solid_at(k)) {
      ++k;
      continue;
    }
    int a = k;
    while (k < hi && solid_at(k)) ++k;
    const int b = k;  // run is [a, b)
    const int len = b - a;
    const bool fluid_left = a > lo && !solid_at(a - 1);
    const bool fluid_right = b < hi && !solid_at(b);
    if (fluid_left) {
      for (int off = 0; off < ng && off < len && a - 1 - off >= lo; ++off) {
        ConsVec<Dim> v = at(a - 1 - off);
        v[1 + axis] = -v[1 + axis];
        at(a + off) = v;
      }
    }
    if (fluid_right) {
      for (int off = 0; off < ng && off < len && b + off < hi; ++off) {
        const int cell = b - 1 - off;
        // nearest face wins where both passes reach (ties keep the left fill)
        if (fluid_left && cell - a <= off) break;
        ConsVec<Dim> v = at(b + off);
        v[1 + axis] = -v[1 + axis];
        at(cell) = v;
      }
    }
  }
}

}  // namespace detail

// Boundary ghost fill for one axis of `field` (padded like g.cells). 2D fills
// run over transverse *interior* pencils only: the sweeps never read corner
// ghosts (dimension-by-dimension filling).
template <int Dim>
inline void fill_ghosts(const FieldGrid<Dim>& g, Field<Dim>& field, int axis) {
  if constexpr (Dim == 1) {
    detail::fill_pencil_bounds<1>(
        g, 0, 0.0, [&](int k) -> ConsVec<1>& { return field[g.flat(k)]; });
  } else {
    if (axis == 0) {
      for (int j = 0; j < g.n[1]; ++j) {
        detail::fill_pencil_bounds<2>(
            g, 0, g.center(1, j),
            [&](int k) -> ConsVec<2>& { return field[g.flat(k, j)]; });
      }
    } else {
      for (int i = 0; i < g.n[0]; ++i) {
        detail::fill_pencil_bounds<2>(
            g, 1, g.center(0, i),
            [&](int k) -> ConsVec<2>& { return field[g.flat(i, k)]; });
      }
    }
  }
}

// Direction-specific mirror fill of solid cells ahead of a sweep along
// `axis`. No-op without a mask.
template <int Dim>
inline void fill_solid(const FieldGrid<Dim>& g, Field<Dim>& field, int axis) {
  if (g.solid.empty()) return;
  if constexpr (Dim == 1) {
    detail::fill_pencil_solid<1>(
        g, 0, [&](int k) -> ConsVec<1>& { return field[g.flat(k)]; },
        [&](int k) { return g.solid[g.flat(k)] != 0; });
  } else {
    if (axis == 0) {
      for (int j = 0; j < g.n[1]; ++j) {
        detail::fill_pencil_solid<2>(
            g, 0, [&](int k) -> ConsVec<2>& { return field[g.flat(k, j)]; },
            [&](int k) { return g.solid[g.flat(k, j)] != 0; });
      }
    } else {
      for (int i = 0; i < g.n[0]; ++i) {
        detail::fill_pencil_solid<2>(
            g, 1, [&](int k) -> ConsVec<2>& { return field[g.flat(i, k)]; },
            [&](int k) { return g.solid[g.flat(i, k)] != 0; });
      }
    }
  }
}

}  // namespace srhd

#endif  // SRHD_GRID_HPP_
