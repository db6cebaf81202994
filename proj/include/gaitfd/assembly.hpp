#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "gaitfd/mesh.hpp"
#include "gaitfd/model.hpp"
#include "gaitfd/tridiag.hpp"

namespace gaitfd {

enum class RegionKind { Inner, Outer };

inline std::string_view to_string(RegionKind k) { return k == RegionKind::Inner ? "inner" : "outer"; }

/// Tridiagonal system over a region's interior nodes with both boundary
/// values folded into the right-hand side.
template <typename Scalar>
struct AssembledRegion {
  TridiagonalSystem<Scalar> system;
  UniformGrid<Scalar> grid;
  Scalar left_value;
  Scalar right_value;
  RegionKind kind;
  /// Mesh width seen by the stencil: the T-step for inner regions, the
  /// physical-time step for outer regions.
  Scalar step;
  /// Coefficient multiplying the left boundary value in the first row.
  Scalar left_coupling;
  /// Coefficient multiplying the right boundary value in the last row.
  Scalar right_coupling;
  /// Stiffness sampled at each interior node.
  Vector<Scalar> reaction;
};

/// Problem coordinate of a stretched-variable value T.
template <typename Scalar>
Scalar inner_coordinate(const GaitProblem<Scalar>& p, Scalar T) {
  return p.frame == Frame::Stretched ? T : unstretch(T, p.epsilon);
}

namespace detail {

template <typename Scalar>
AssembledRegion<Scalar> fold(TridiagonalSystem<Scalar> sys, const UniformGrid<Scalar>& grid,
                             Scalar left, Scalar right, RegionKind kind, Scalar step,
                             Scalar left_coupling, Scalar right_coupling, Vector<Scalar> reaction) {
  const Eigen::Index m = sys.size();
  sys.rhs(0) -= left_coupling * left;
  sys.rhs(m - 1) -= right_coupling * right;
  return AssembledRegion<Scalar>{std::move(sys), grid,           left,          right,
                                 kind,           step,           left_coupling, right_coupling,
                                 std::move(reaction)};
}

}  // namespace detail

/// Central differences for  eps^2 Z'' + eps^2 U Z' + V Z = F  on a grid in
/// the stretched variable, with U, V, F evaluated at the node's problem
/// coordinate (T/eps for physical problems, T itself for stretched ones).
///
/// Row i:  eps^2 (1/k^2 - U_i/(2k)) Z_{i-1} + (V_i - 2 eps^2/k^2) Z_i
///         + eps^2 (1/k^2 + U_i/(2k)) Z_{i+1} = F_i
template <typename Scalar>
AssembledRegion<Scalar> assemble_inner(const GaitProblem<Scalar>& p,
                                       const UniformGrid<Scalar>& grid, Scalar left_value,
                                       Scalar right_value) {
  const std::size_t n = grid.intervals();
  const Eigen::Index m = static_cast<Eigen::Index>(n - 1);
  const Scalar k = grid.step();
  const Scalar e2 = p.epsilon * p.epsilon;
  const Scalar coupling = e2 / (k * k);
  const Scalar advect = e2 / (Scalar(2) * k);

  TridiagonalSystem<Scalar> sys{Vector<Scalar>(m - 1), Vector<Scalar>(m), Vector<Scalar>(m - 1),
                                Vector<Scalar>(m)};
  Vector<Scalar> reaction(m);
  Scalar first_lower{}, last_upper{};
  for (Eigen::Index r = 0; r < m; ++r) {
    const Scalar x = inner_coordinate(p, grid.node(static_cast<std::size_t>(r + 1)));
    const Scalar U = p.damping(x);
    const Scalar V = p.stiffness(x);
    const Scalar lower = coupling - advect * U;
    const Scalar upper = coupling + advect * U;
    reaction(r) = V;
    sys.diag(r) = V - Scalar(2) * coupling;
    sys.rhs(r) = p.forcing(x);
    if (r > 0) sys.lower(r - 1) = lower; else first_lower = lower;
    if (r + 1 < m) sys.upper(r) = upper; else last_upper = upper;
  }
  return detail::fold(std::move(sys), grid, left_value, right_value, RegionKind::Inner, k,
                      first_lower, last_upper, std::move(reaction));
}

/// Central differences for  z'' + eps*mu z' + v z = f  in physical time on a
/// grid in the problem coordinate. Stretched problems have their step
/// converted to physical time (h = k/eps) before the stencil is formed.
///
/// Row i:  (1/h^2 - eps mu_i/(2h)) z_{i-1} + (v_i - 2/h^2) z_i
///         + (1/h^2 + eps mu_i/(2h)) z_{i+1} = f_i
template <typename Scalar>
AssembledRegion<Scalar> assemble_outer(const GaitProblem<Scalar>& p,
                                       const UniformGrid<Scalar>& grid, Scalar left_value,
                                       Scalar right_value) {
  const std::size_t n = grid.intervals();
  const Eigen::Index m = static_cast<Eigen::Index>(n - 1);
  const Scalar h = grid.step() / p.time_scale();
  const Scalar inv_h2 = Scalar(1) / (h * h);
  const Scalar advect = p.epsilon / (Scalar(2) * h);

  TridiagonalSystem<Scalar> sys{Vector<Scalar>(m - 1), Vector<Scalar>(m), Vector<Scalar>(m - 1),
                                Vector<Scalar>(m)};
  Vector<Scalar> reaction(m);
  Scalar first_lower{}, last_upper{};
  for (Eigen::Index r = 0; r < m; ++r) {
    const Scalar x = grid.node(static_cast<std::size_t>(r + 1));
    const Scalar mu = p.damping(x);
    const Scalar v = p.stiffness(x);
    const Scalar lower = inv_h2 - advect * mu;
    const Scalar upper = inv_h2 + advect * mu;
    reaction(r) = v;
    sys.diag(r) = v - Scalar(2) * inv_h2;
    sys.rhs(r) = p.forcing(x);
    if (r > 0) sys.lower(r - 1) = lower; else first_lower = lower;
    if (r + 1 < m) sys.upper(r) = upper; else last_upper = upper;
  }
  return detail::fold(std::move(sys), grid, left_value, right_value, RegionKind::Outer, h,
                      first_lower, last_upper, std::move(reaction));
}

/// Lower/upper stencil coefficients of every row, boundary couplings included.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> full_off_diagonals(const AssembledRegion<Scalar>& r) {
  const Eigen::Index m = r.system.size();
  Vector<Scalar> lower(m), upper(m);
  lower(0) = r.left_coupling;
  upper(m - 1) = r.right_coupling;
  if (m > 1) {
    lower.tail(m - 1) = r.system.lower;
    upper.head(m - 1) = r.system.upper;
  }
  return {lower, upper};
}

/// Diagnostic only; solving never consults it.
template <typename Scalar>
struct StabilityReport {
  RegionKind kind;
  Vector<Scalar> margins;
  bool satisfied = false;
  /// Grid node index (interior nodes start at 1) of the smallest margin.
  std::size_t worst_node = 0;
};

/// Inner regions: margin_i = V_i - 4 eps^2/k^2.
/// Outer regions: margin_i = |A_i| - (|C_i| + |B_i|) over the full stencil.
template <typename Scalar>
StabilityReport<Scalar> stability_check(const AssembledRegion<Scalar>& region,
                                        const GaitProblem<Scalar>& p) {
  StabilityReport<Scalar> report{region.kind, {}, false, 0};
  if (region.kind == RegionKind::Inner) {
    const Scalar k = region.step;
    const Scalar bound = Scalar(4) * p.epsilon * p.epsilon / (k * k);
    report.margins = region.reaction.array() - bound;
  } else {
    const auto [lower, upper] = full_off_diagonals(region);
    report.margins = region.system.diag.cwiseAbs() - lower.cwiseAbs() - upper.cwiseAbs();
  }
  Eigen::Index worst = 0;
  report.margins.minCoeff(&worst);
  report.worst_node = static_cast<std::size_t>(worst) + 1;
  report.satisfied = (report.margins.array() > Scalar(0)).all();
  return report;
}

}  // namespace gaitfd
