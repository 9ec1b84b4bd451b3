//! \file problems.hpp
//! Named, parameter-complete benchmark problem definitions: initial data,
//! EOS, domain, boundary conditions, final time, and default resolution for
//! every case in the verification suite, plus grid builders that realize a
//! definition on a concrete mesh.

#ifndef SRHD_PROBLEMS_HPP_
#define SRHD_PROBLEMS_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "srhd/grid.hpp"

namespace srhd {

// Inflow boundary description: a fixed primitive beam state, active on the
// closed interval [mask_lo, mask_hi] of the transverse coordinate (the whole
// side by default); outside the mask the side behaves as outflow.
template <int Dim>
struct InflowSpec {
  Prim<Dim> beam;
  double mask_lo = -1e300;
  double mask_hi = 1e300;
};

struct ProblemSpec {
  std::string name;
  int dimension = 1;
  Geometry geometry = Geometry::planar;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  EosParams eos;
  double t_final = 1.0;
  std::array<int, 2> default_n{0, 0};

  std::function<Prim<1>(double)> init1;          // dimension == 1
  std::function<Prim<2>(double, double)> init2;  // dimension == 2

  // bc_kind[axis][side]; inflow sides carry a beam description.
  std::array<std::array<BoundaryKind, 2>, 2> bc_kind{
      {{BoundaryKind::outflow, BoundaryKind::outflow},
       {BoundaryKind::outflow, BoundaryKind::outflow}}};
  std::optional<InflowSpec<1>> inflow1[2][2];
  std::optional<InflowSpec<2>> inflow2[2][2];

  // cells whose center satisfies this predicate are solid (internal walls)
  std::function<bool(double, double)> solid;
};

// Look up a benchmark by name; throws ConfigError for unknown names.
ProblemSpec preset(const std::string& name);

// All preset names in their canonical order.
std::vector<std::string> list_problems();

// Realize the problem on a mesh of n (nx-by-ny) cells with ng ghost cells:
// builds the grid geometry and boundary conditions, fills the initial data
// by forward-mapping the primitive initial state at every cell center, and
// validates the result.
FieldGrid<1> build_grid_1d(const ProblemSpec& spec, int n, int ng);
FieldGrid<2> build_grid_2d(const ProblemSpec& spec, int nx, int ny, int ng);

}  // namespace srhd

#endif  // SRHD_PROBLEMS_HPP_
