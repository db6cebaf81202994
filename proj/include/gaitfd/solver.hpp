#pragma once

#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "gaitfd/assembly.hpp"
#include "gaitfd/errors.hpp"
#include "gaitfd/mesh.hpp"
#include "gaitfd/model.hpp"
#include "gaitfd/tridiag.hpp"

namespace gaitfd {

template <typename Scalar>
struct Sample {
  Scalar t;
  Scalar z;
  RegionKind region;
};

/// How the inner and outer regions agree on the value at the split point.
enum class Coupling {
  /// The split node carries the discrete equation on the composite mesh
  /// (non-uniform three-point stencil); the interface value is eliminated
  /// from one homogeneous and one forced solve per region.
  Matched,
  /// The interface value is taken from the reduced solution at t_p.
  ReducedSeed,
};

enum class Mode { Decomposed, Monolithic };

/// Merged numerical solution in the problem coordinate, strictly increasing
/// in t. The split-point sample is tagged outer.
template <typename Scalar>
struct SolutionProfile {
  std::vector<Sample<Scalar>> samples;
  GaitProblem<Scalar> problem;
  std::optional<DecompositionPlan<Scalar>> plan;
  std::optional<StabilityReport<Scalar>> inner_stability;
  std::optional<StabilityReport<Scalar>> outer_stability;
  std::vector<std::string> warnings;

  bool stable() const {
    return (!inner_stability || inner_stability->satisfied) &&
           (!outer_stability || outer_stability->satisfied);
  }
};

namespace detail {

template <typename Scalar>
Vector<Scalar> solve_region(const TridiagonalSystem<Scalar>& sys, RegionKind kind) {
  try {
    return thomas_solve(sys);
  } catch (const PivotBreakdown& e) {
    throw SolverBreakdown(std::string(to_string(kind)), e.row() + 1, e.what());
  }
}

template <typename Scalar>
void record_stability(SolutionProfile<Scalar>& out, const StabilityReport<Scalar>& report) {
  if (report.satisfied) return;
  const std::string condition = report.kind == RegionKind::Inner
                                    ? "V_i > 4 eps^2/k^2"
                                    : "strict diagonal dominance";
  out.warnings.push_back(std::string(to_string(report.kind)) + " region violates " + condition +
                         " (worst node " + std::to_string(report.worst_node) + ", margin " +
                         std::to_string(static_cast<double>(
                             report.margins(static_cast<Eigen::Index>(report.worst_node) - 1))) +
                         ")");
}

/// Value at the split point that makes the composite-mesh equation hold there.
template <typename Scalar>
Scalar matched_interface_value(const GaitProblem<Scalar>& p, const DecompositionPlan<Scalar>& plan,
                               const AssembledRegion<Scalar>& inner,
                               const AssembledRegion<Scalar>& outer) {
  // Particular solutions: inner with right boundary 0, outer with left boundary 0.
  const Vector<Scalar> inner_forced = solve_region(inner.system, RegionKind::Inner);
  const Vector<Scalar> outer_forced = solve_region(outer.system, RegionKind::Outer);

  // Responses to a unit interface value with zero forcing.
  TridiagonalSystem<Scalar> unit_inner = inner.system;
  unit_inner.rhs.setZero();
  unit_inner.rhs(unit_inner.size() - 1) = -inner.right_coupling;
  TridiagonalSystem<Scalar> unit_outer = outer.system;
  unit_outer.rhs.setZero();
  unit_outer.rhs(0) = -outer.left_coupling;
  const Vector<Scalar> inner_unit = solve_region(unit_inner, RegionKind::Inner);
  const Vector<Scalar> outer_unit = solve_region(unit_outer, RegionKind::Outer);

  // Physical-time spacing on either side of the split.
  const Scalar h_in = inner.step / p.epsilon;
  const Scalar h_out = outer.step;
  const Scalar sum = h_in + h_out;
  const Scalar x = plan.split;
  const Scalar damp = p.epsilon * p.damping(x);
  const Scalar alpha = (Scalar(2) - damp * h_out) / (h_in * sum);
  const Scalar gamma = (Scalar(2) + damp * h_in) / (h_out * sum);
  const Scalar beta = (-Scalar(2) + damp * (h_out - h_in)) / (h_in * h_out) + p.stiffness(x);

  const Eigen::Index last = inner_forced.size() - 1;
  const Scalar denom = beta + alpha * inner_unit(last) + gamma * outer_unit(0);
  if (!(std::abs(denom) >= Scalar(kPivotBreakdownTolerance)))
    throw SolverBreakdown("interface", inner.grid.intervals(), "singular interface equation");
  return (p.forcing(x) - alpha * inner_forced(last) - gamma * outer_forced(0)) / denom;
}

}  // namespace detail

/// Decomposed solve: a tridiagonal system per region, each handled by the
/// Thomas algorithm, merged into one profile. Stability is reported, never
/// enforced.
template <typename Scalar>
SolutionProfile<Scalar> solve(const GaitProblem<Scalar>& p, const DecompositionPlan<Scalar>& plan,
                              Coupling coupling = Coupling::Matched) {
  if (plan.epsilon != p.epsilon || plan.frame != p.frame || plan.outer.end() != p.t_final)
    throw InvalidSplit("decomposition plan was built for a different problem");

  Scalar interface_value;
  if (coupling == Coupling::Matched) {
    interface_value = detail::matched_interface_value(
        p, plan, assemble_inner(p, plan.inner, p.f1, Scalar(0)),
        assemble_outer(p, plan.outer, Scalar(0), p.f2));
  } else {
    interface_value = reduced_solution(p, plan.split);
  }

  const auto outer = assemble_outer(p, plan.outer, interface_value, p.f2);
  const auto inner = assemble_inner(p, plan.inner, p.f1, interface_value);
  const Vector<Scalar> z_out = detail::solve_region(outer.system, RegionKind::Outer);
  const Vector<Scalar> z_in = detail::solve_region(inner.system, RegionKind::Inner);

  SolutionProfile<Scalar> out{{}, p, plan, stability_check(inner, p), stability_check(outer, p), {}};
  auto& s = out.samples;
  s.reserve(plan.inner.intervals() + plan.outer.intervals() + 1);
  s.push_back({Scalar(0), p.f1, RegionKind::Inner});
  for (Eigen::Index i = 0; i < z_in.size(); ++i)
    s.push_back({plan.inner_to_coordinate(plan.inner.node(static_cast<std::size_t>(i + 1))),
                 z_in(i), RegionKind::Inner});
  s.push_back({plan.split, interface_value, RegionKind::Outer});
  for (Eigen::Index i = 0; i < z_out.size(); ++i)
    s.push_back({plan.outer.node(static_cast<std::size_t>(i + 1)), z_out(i), RegionKind::Outer});
  s.push_back({p.t_final, p.f2, RegionKind::Outer});

  detail::record_stability(out, *out.inner_stability);
  detail::record_stability(out, *out.outer_stability);
  return out;
}

/// Single-region reference: the physical-time stencil over all of [0, t_f].
template <typename Scalar>
SolutionProfile<Scalar> solve_monolithic(const GaitProblem<Scalar>& p,
                                         const UniformGrid<Scalar>& grid) {
  if (grid.start() != Scalar(0) || grid.end() != p.t_final)
    throw InvalidGrid("monolithic grid must span [0, t_f]");
  const auto region = assemble_outer(p, grid, p.f1, p.f2);
  const Vector<Scalar> z = detail::solve_region(region.system, RegionKind::Outer);

  SolutionProfile<Scalar> out{{}, p, std::nullopt, std::nullopt, stability_check(region, p), {}};
  out.samples.reserve(grid.nodes());
  out.samples.push_back({Scalar(0), p.f1, RegionKind::Outer});
  for (Eigen::Index i = 0; i < z.size(); ++i)
    out.samples.push_back({grid.node(static_cast<std::size_t>(i + 1)), z(i), RegionKind::Outer});
  out.samples.push_back({p.t_final, p.f2, RegionKind::Outer});
  detail::record_stability(out, *out.outer_stability);
  return out;
}

template <typename Scalar>
SolutionProfile<Scalar> solve_monolithic(const GaitProblem<Scalar>& p, std::size_t intervals) {
  return solve_monolithic(p, UniformGrid<Scalar>(Scalar(0), p.t_final, intervals));
}

/// max over samples of |z - reference(t)|.
template <typename Scalar>
Scalar max_error(const SolutionProfile<Scalar>& profile,
                 const std::type_identity_t<CoefficientFn<Scalar>>& reference) {
  Scalar worst(0);
  for (const auto& s : profile.samples) worst = std::max(worst, std::abs(s.z - reference(s.t)));
  return worst;
}

/// Index of the sample closest to t (first one on ties).
template <typename Scalar>
std::size_t nearest_sample(const SolutionProfile<Scalar>& profile, Scalar t) {
  std::size_t best = 0;
  Scalar best_d = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const Scalar d = std::abs(profile.samples[i].t - t);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Convergence studies

struct ConvergenceRow {
  double k;
  std::size_t intervals;
  double max_error;
  std::optional<double> observed_order;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::string reference;
};

template <typename Scalar>
struct StudyOptions {
  Mode mode = Mode::Decomposed;
  /// Split point for decomposed runs; 1% of the horizon when absent.
  std::optional<Scalar> split;
  /// Inner intervals at the coarsest level; 0 picks the count whose
  /// physical step does not exceed the outer step.
  std::size_t inner_base = 0;
  Coupling coupling = Coupling::Matched;
  bool parallel = true;
};

namespace detail {

template <typename Scalar>
struct LevelResult {
  Scalar k;
  SolutionProfile<Scalar> profile;
};

template <typename Scalar>
LevelResult<Scalar> solve_level(const GaitProblem<Scalar>& p, std::size_t base_n,
                                std::size_t level, const StudyOptions<Scalar>& opt) {
  const std::size_t scale = std::size_t{1} << level;
  const std::size_t n = base_n * scale;
  if (opt.mode == Mode::Monolithic) {
    UniformGrid<Scalar> grid(Scalar(0), p.t_final, n);
    return {grid.step(), solve_monolithic(p, grid)};
  }
  const Scalar split = opt.split.value_or(Scalar(0.01) * p.t_final);
  std::size_t inner_base = opt.inner_base;
  if (inner_base == 0) {
    const double ratio =
        static_cast<double>(split) / static_cast<double>(p.t_final - split) * double(base_n);
    inner_base = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(ratio)));
  }
  const auto plan = build_decomposition(p, split, inner_base * scale, n);
  return {plan.outer.step(), solve(p, plan, opt.coupling)};
}

template <typename Scalar>
std::optional<double> order_between(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::nullopt;
  return std::log2(coarse / fine);
}

}  // namespace detail

/// Solves at n = base_n * 2^j for j = 0..levels-1 and measures max-norm
/// errors against `exact`, or against an extra finest level (sampled at the
/// coarse nodes, which it contains) when `exact` is empty.
template <typename Scalar>
ConvergenceReport convergence_study(const GaitProblem<Scalar>& p,
                                    const std::type_identity_t<CoefficientFn<Scalar>>& exact,
                                    std::size_t base_n,
                                    std::size_t levels, const StudyOptions<Scalar>& opt = {}) {
  if (levels < 2) throw InvalidGrid("a convergence study needs at least 2 levels");
  if (base_n < 2) throw InvalidGrid("base resolution needs at least 2 intervals");
  const bool self_ref = !exact;
  const std::size_t total = self_ref ? levels + 1 : levels;

  auto run = [&](std::size_t j) {
    try {
      return detail::solve_level(p, base_n, j, opt);
    } catch (const Error& e) {
      throw LevelFailure(j, e.what());
    }
  };
  std::vector<detail::LevelResult<Scalar>> results;
  results.reserve(total);
  if (opt.parallel) {
    std::vector<std::future<detail::LevelResult<Scalar>>> jobs;
    for (std::size_t j = 0; j < total; ++j) jobs.push_back(std::async(std::launch::async, run, j));
    for (auto& job : jobs) results.push_back(job.get());
  } else {
    for (std::size_t j = 0; j < total; ++j) results.push_back(run(j));
  }

  ConvergenceReport report;
  report.reference = self_ref ? "finest grid (n = " + std::to_string(base_n << levels) + ")"
                              : std::string("exact solution");
  for (std::size_t j = 0; j < levels; ++j) {
    const auto& prof = results[j].profile;
    double err = 0.0;
    if (self_ref) {
      const auto& fine = results[levels].profile.samples;
      const std::size_t stride = std::size_t{1} << (levels - j);
      for (std::size_t m = 0; m < prof.samples.size(); ++m) {
        const auto& ref = fine.at(m * stride);
        err = std::max(err, static_cast<double>(std::abs(prof.samples[m].z - ref.z)));
      }
    } else {
      err = static_cast<double>(max_error(prof, exact));
    }
    std::optional<double> order;
    if (j > 0) order = detail::order_between<Scalar>(report.rows.back().max_error, err);
    report.rows.push_back({static_cast<double>(results[j].k), base_n << j, err, order});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Comparison against published tables

struct TablePoint {
  double t;
  double value;
};

struct TableComparison {
  double t;
  double matched_t;
  double ours;
  double theirs;
  double deviation;
};

/// Matches each row to the nearest sample; deviation is relative to the
/// tabulated value (floored at 1e-12).
template <typename Scalar>
std::vector<TableComparison> table_compare(const SolutionProfile<Scalar>& profile,
                                           std::span<const TablePoint> table) {
  std::vector<TableComparison> out;
  out.reserve(table.size());
  for (const auto& row : table) {
    const auto& s = profile.samples[nearest_sample(profile, Scalar(row.t))];
    const double ours = static_cast<double>(s.z);
    out.push_back({row.t, static_cast<double>(s.t), ours, row.value,
                   std::abs(ours - row.value) / std::max(std::abs(row.value), 1e-12)});
  }
  return out;
}

}  // namespace gaitfd
