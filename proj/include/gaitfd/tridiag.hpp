#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gaitfd/errors.hpp"

namespace gaitfd {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Row r reads  lower[r-1]*x[r-1] + diag[r]*x[r] + upper[r]*x[r+1] = rhs[r].
template <typename Scalar>
struct TridiagonalSystem {
  Vector<Scalar> lower;
  Vector<Scalar> diag;
  Vector<Scalar> upper;
  Vector<Scalar> rhs;

  Eigen::Index size() const { return diag.size(); }

  /// Throws InvalidSystem when the diagonal lengths are inconsistent or an entry
  /// is not finite.
  void validate() const {
    const Eigen::Index n = diag.size();
    if (n < 1 || rhs.size() != n || lower.size() != n - 1 || upper.size() != n - 1)
      throw InvalidSystem("tridiagonal system has inconsistent diagonal lengths");
    if (!lower.allFinite() || !diag.allFinite() || !upper.allFinite() || !rhs.allFinite())
      throw InvalidSystem("tridiagonal system has non-finite entries");
  }

  /// A*x evaluated row by row.
  Vector<Scalar> apply(const Vector<Scalar>& x) const {
    const Eigen::Index n = size();
    Vector<Scalar> y = diag.cwiseProduct(x);
    if (n > 1) {
      y.tail(n - 1) += lower.cwiseProduct(x.head(n - 1));
      y.head(n - 1) += upper.cwiseProduct(x.tail(n - 1));
    }
    return y;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    const Eigen::Index n = size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    a.diagonal() = diag;
    if (n > 1) {
      a.template diagonal<-1>() = lower;
      a.template diagonal<1>() = upper;
    }
    return a;
  }
};

/// Sweep counters for the Thomas solver.
struct ThomasStats {
  std::size_t forward_steps = 0;
  std::size_t backward_steps = 0;
  std::size_t flops = 0;
};

inline constexpr double kPivotBreakdownTolerance = 1e-300;

/// Thomas algorithm: forward elimination then back substitution, O(n).
/// The system is left untouched.
template <typename Scalar>
Vector<Scalar> thomas_solve(const TridiagonalSystem<Scalar>& sys, ThomasStats* stats = nullptr) {
  sys.validate();
  const Eigen::Index n = sys.size();
  Vector<Scalar> c(n);  // modified super-diagonal
  Vector<Scalar> d(n);  // modified rhs
  ThomasStats local;

  Scalar pivot = sys.diag(0);
  if (!(std::abs(pivot) >= Scalar(kPivotBreakdownTolerance))) throw PivotBreakdown(0);
  c(0) = n > 1 ? sys.upper(0) / pivot : Scalar(0);
  d(0) = sys.rhs(0) / pivot;
  ++local.forward_steps;
  local.flops += 2;
  for (Eigen::Index i = 1; i < n; ++i) {
    const Scalar a = sys.lower(i - 1);
    pivot = sys.diag(i) - a * c(i - 1);
    if (!(std::abs(pivot) >= Scalar(kPivotBreakdownTolerance)))
      throw PivotBreakdown(static_cast<std::size_t>(i));
    c(i) = i + 1 < n ? sys.upper(i) / pivot : Scalar(0);
    d(i) = (sys.rhs(i) - a * d(i - 1)) / pivot;
    ++local.forward_steps;
    local.flops += 7;
  }

  Vector<Scalar> x(n);
  x(n - 1) = d(n - 1);
  ++local.backward_steps;
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    x(i) = d(i) - c(i) * x(i + 1);
    ++local.backward_steps;
    local.flops += 2;
  }
  if (stats) *stats = local;
  return x;
}

/// Reference solver: materializes the matrix and factors it with partially
/// pivoted LU. Meant for verification at small n.
template <typename Scalar>
Vector<Scalar> dense_solve_oracle(const TridiagonalSystem<Scalar>& sys) {
  sys.validate();
  const Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(sys.dense());
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (!(std::abs(diag(i)) > Scalar(0)) || !std::isfinite(static_cast<double>(diag(i))))
      throw Singular(static_cast<std::size_t>(i));
  return lu.solve(sys.rhs);
}

/// Per-row margin |b_i| - (|a_i| + |c_i|); missing off-diagonals count as 0.
template <typename Scalar>
struct DominanceReport {
  Vector<Scalar> margins;
  bool strictly_dominant = false;
};

template <typename Scalar>
DominanceReport<Scalar> dominance_report(const TridiagonalSystem<Scalar>& sys) {
  const Eigen::Index n = sys.size();
  DominanceReport<Scalar> report;
  report.margins = sys.diag.cwiseAbs();
  if (n > 1) {
    report.margins.tail(n - 1) -= sys.lower.cwiseAbs();
    report.margins.head(n - 1) -= sys.upper.cwiseAbs();
  }
  report.strictly_dominant = n > 0 && (report.margins.array() > Scalar(0)).all();
  return report;
}

/// Infinity norm of A*x - d.
template <typename Scalar>
Scalar residual_norm(const TridiagonalSystem<Scalar>& sys, const Vector<Scalar>& x) {
  return (sys.apply(x) - sys.rhs).template lpNorm<Eigen::Infinity>();
}

}  // namespace gaitfd
