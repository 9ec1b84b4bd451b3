#include "srhd/problems.hpp"

#include <cmath>
#include <sstream>

namespace srhd {
namespace {

Prim<1> prim1(double rho, double v, double p) {
  Prim<1> V;
  V.rho = rho;
  V.v = {v};
  V.p = p;
  return V;
}

Prim<2> prim2(double rho, double v1, double v2, double p) {
  Prim<2> V;
  V.rho = rho;
  V.v = {v1, v2};
  V.p = p;
  return V;
}

// Pressure of a gamma-law gas with the given classical Mach number M = v/c_s:
// from c_s^2 = gamma p / (rho h), p = c^2 rho (gamma-1) / (gamma (gamma-1-c^2)).
double pressure_from_mach(double rho, double v, double mach,
                          const EosParams& eos) {
  const double c = v / mach;
  const double c2 = c * c;
  return c2 * rho * (eos.gamma - 1.0) /
         (eos.gamma * (eos.gamma - 1.0 - c2));
}

ProblemSpec smooth_spec() {
  ProblemSpec s;
  s.name = "smooth";
  s.dimension = 1;
  s.lo = {0.0, 0.0};
  s.hi = {2.0 * std::acos(-1.0), 0.0};
  s.eos = EosParams{.gamma = 5.0 / 3.0};
  s.t_final = 0.01;
  s.default_n = {128, 0};
  s.bc_kind[0] = {BoundaryKind::periodic, BoundaryKind::periodic};
  // density sine wave advected at 0.99 under constant pressure
  s.init1 = [](double x) {
    return prim1(1.0 + 0.99999 * std::sin(x), 0.99, 0.005);
  };
  return s;
}

ProblemSpec rp1d_spec() {
  ProblemSpec s;
  s.name = "rp1d";
  s.dimension = 1;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 0.0};
  s.eos = EosParams{.gamma = 5.0 / 3.0};
  s.t_final = 0.45;
  s.default_n = {800, 0};
  s.init1 = [](double x) {
    return x < 0.5 ? prim1(1.0, 0.0, 1e4) : prim1(1.0, 0.0, 1e-8);
  };
  return s;
}

ProblemSpec blast_spec() {
  ProblemSpec s;
  s.name = "blast";
  s.dimension = 1;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 0.0};
  s.eos = EosParams{.gamma = 1.4};
  s.t_final = 0.43;
  s.default_n = {4000, 0};
  s.init1 = [](double x) {
    if (x < 0.1) return prim1(1.0, 0.0, 1000.0);
    if (x < 0.9) return prim1(1.0, 0.0, 0.01);
    return prim1(1.0, 0.0, 100.0);
  };
  return s;
}

ProblemSpec shock_heating_spec() {
  ProblemSpec s;
  s.name = "shock_heating";
  s.dimension = 1;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 0.0};
  s.eos = EosParams{.gamma = 4.0 / 3.0};
  s.t_final = 2.0;
  s.default_n = {200, 0};
  const double v0 = 1.0 - 1e-10;
  const double e0 = 1e-4;  // cold gas: specific internal energy 0.0001
  const double p0 = (s.eos.gamma - 1.0) * 1.0 * e0;
  const Prim<1> gas = prim1(1.0, v0, p0);
  s.init1 = [gas](double) { return gas; };
  // gas streams in from the left and reflects off the right wall
  s.bc_kind[0] = {BoundaryKind::inflow, BoundaryKind::reflective};
  s.inflow1[0][0] = InflowSpec<1>{gas};
  return s;
}

ProblemSpec rp2d_1_spec() {
  ProblemSpec s;
  s.name = "rp2d_1";
  s.dimension = 2;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.eos = EosParams{.gamma = 5.0 / 3.0};
  s.t_final = 0.4;
  s.default_n = {400, 400};
  s.init2 = [](double x, double y) {
    if (x > 0.5)
      return y > 0.5 ? prim2(0.1, 0.0, 0.0, 0.01)
                     : prim2(0.1, 0.0, 0.99, 1.0);
    return y > 0.5 ? prim2(0.1, 0.99, 0.0, 1.0) : prim2(0.5, 0.0, 0.0, 1.0);
  };
  return s;
}

ProblemSpec rp2d_2_spec() {
  ProblemSpec s;
  s.name = "rp2d_2";
  s.dimension = 2;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.eos = EosParams{.gamma = 5.0 / 3.0};
  s.t_final = 0.4;
  s.default_n = {400, 400};
  // left and bottom discontinuities are contacts; top and right are shocks
  // moving at -0.66525606186639
  s.init2 = [](double x, double y) {
    if (x > 0.5)
      return y > 0.5 ? prim2(0.1, 0.0, 0.0, 20.0)
                     : prim2(0.00414329639576, 0.0, 0.9946418833556542, 0.05);
    return y > 0.5 ? prim2(0.00414329639576, 0.9946418833556542, 0.0, 0.05)
                   : prim2(0.01, 0.0, 0.0, 0.05);
  };
  return s;
}

ProblemSpec ffstep_spec() {
  ProblemSpec s;
  s.name = "ffstep";
  s.dimension = 2;
  s.lo = {0.0, 0.0};
  s.hi = {3.0, 1.0};
  s.eos = EosParams{.gamma = 1.4};
  s.t_final = 4.0;
  s.default_n = {300, 100};
  // Mach-3 free stream: c_s = v/3 fixes the pressure.
  const double p = pressure_from_mach(1.4, 0.999, 3.0, s.eos);
  const Prim<2> wind = prim2(1.4, 0.999, 0.0, p);
  s.init2 = [wind](double, double) { return wind; };
  s.bc_kind[0] = {BoundaryKind::inflow, BoundaryKind::outflow};
  s.bc_kind[1] = {BoundaryKind::reflective, BoundaryKind::reflective};
  s.inflow2[0][0] = InflowSpec<2>{wind};
  // forward-facing step: height 0.2 from x = 0.6 to the end of the tunnel
  s.solid = [](double x, double y) { return x > 0.6 && y < 0.2; };
  return s;
}

ProblemSpec jet_spec(const char* name, double gamma, double mach,
                     double r_max, double z_max, int nr, int nz,
                     double t_final) {
  ProblemSpec s;
  s.name = name;
  s.dimension = 2;
  s.geometry = Geometry::axisymmetric;
  s.lo = {0.0, 0.0};
  s.hi = {r_max, z_max};
  s.eos = EosParams{.gamma = gamma};
  s.t_final = t_final;
  s.default_n = {nr, nz};
  // Pressure-matched beam: rho_b = 0.01, v_b = 0.99 along z, pressure set by
  // the classical beam Mach number; the static ambient medium has unit
  // density and the same pressure.
  const double p = pressure_from_mach(0.01, 0.99, mach, s.eos);
  const Prim<2> ambient = prim2(1.0, 0.0, 0.0, p);
  const Prim<2> beam = prim2(0.01, 0.0, 0.99, p);
  s.init2 = [ambient](double, double) { return ambient; };
  s.bc_kind[0] = {BoundaryKind::axis, BoundaryKind::outflow};
  s.bc_kind[1] = {BoundaryKind::inflow, BoundaryKind::outflow};
  // nozzle: beam injected through r <= 1 of the z = 0 boundary
  s.inflow2[1][0] = InflowSpec<2>{beam, 0.0, 1.0};
  return s;
}

}  // namespace

ProblemSpec preset(const std::string& name) {
  if (name == "smooth") return smooth_spec();
  if (name == "rp1d") return rp1d_spec();
  if (name == "blast") return blast_spec();
  if (name == "shock_heating") return shock_heating_spec();
  if (name == "rp2d_1") return rp2d_1_spec();
  if (name == "rp2d_2") return rp2d_2_spec();
  if (name == "ffstep") return ffstep_spec();
  if (name == "jet_a1")
    return jet_spec("jet_a1", 4.0 / 3.0, 1.72, 7.0, 50.0, 280, 2000, 60.0);
  if (name == "jet_c2")
    return jet_spec("jet_c2", 5.0 / 3.0, 6.0, 15.0, 45.0, 384, 1152, 100.0);
  std::ostringstream os;
  os << "unknown problem '" << name << "'";
  throw ConfigError(os.str());
}

std::vector<std::string> list_problems() {
  return {"smooth", "rp1d",   "blast",  "shock_heating", "rp2d_1",
          "rp2d_2", "ffstep", "jet_a1", "jet_c2"};
}

FieldGrid<1> build_grid_1d(const ProblemSpec& spec, int n, int ng) {
  if (spec.dimension != 1)
    throw ConfigError("problem '" + spec.name + "' is not one-dimensional");
  FieldGrid<1> g;
  g.n = {n};
  g.ng = ng;
  g.geometry = spec.geometry;
  g.origin = {spec.lo[0]};
  g.dx = {(spec.hi[0] - spec.lo[0]) / n};
  for (int side = 0; side < 2; ++side) {
    g.bc[0][side].kind = spec.bc_kind[0][side];
    if (const auto& in = spec.inflow1[0][side]) {
      g.bc[0][side].inflow_state = conserved_from_primitive(in->beam, spec.eos);
      g.bc[0][side].mask_lo = in->mask_lo;
      g.bc[0][side].mask_hi = in->mask_hi;
    }
  }
  g.allocate();
  for (int i = 0; i < n; ++i)
    g.cells[g.flat(i)] = conserved_from_primitive(spec.init1(g.center(0, i)),
                                                  spec.eos);
  g.validate();
  return g;
}

FieldGrid<2> build_grid_2d(const ProblemSpec& spec, int nx, int ny, int ng) {
  if (spec.dimension != 2)
    throw ConfigError("problem '" + spec.name + "' is not two-dimensional");
  FieldGrid<2> g;
  g.n = {nx, ny};
  g.ng = ng;
  g.geometry = spec.geometry;
  g.origin = {spec.lo[0], spec.lo[1]};
  g.dx = {(spec.hi[0] - spec.lo[0]) / nx, (spec.hi[1] - spec.lo[1]) / ny};
  for (int axis = 0; axis < 2; ++axis)
    for (int side = 0; side < 2; ++side) {
      g.bc[axis][side].kind = spec.bc_kind[axis][side];
      if (const auto& in = spec.inflow2[axis][side]) {
        g.bc[axis][side].inflow_state =
            conserved_from_primitive(in->beam, spec.eos);
        g.bc[axis][side].mask_lo = in->mask_lo;
        g.bc[axis][side].mask_hi = in->mask_hi;
      }
    }
  g.allocate();
  if (spec.solid) g.solid.assign(g.total(), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x = g.center(0, i);
      const double y = g.center(1, j);
      const std::size_t f = g.flat(i, j);
      g.cells[f] = conserved_from_primitive(spec.init2(x, y), spec.eos);
      if (spec.solid && spec.solid(x, y)) g.solid[f] = 1;
    }
  if (spec.solid) {
    bool any = false;
    for (std::uint8_t m : g.solid) any = any || m;
    if (!any) g.solid.clear();
  }
  g.validate();
  return g;
}

}  // namespace srhd
