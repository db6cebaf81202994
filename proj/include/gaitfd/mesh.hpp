#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>

#include "gaitfd/errors.hpp"
#include "gaitfd/model.hpp"

namespace gaitfd {

/// n equal intervals on [start, end]; node i sits at start + i*k.
template <typename Scalar>
class UniformGrid {
 public:
  UniformGrid(Scalar start, Scalar end, std::size_t n) : start_(start), end_(end), n_(n) {
    if (n < 2) throw InvalidGrid("a grid needs at least 2 intervals, got " + std::to_string(n));
    if (!(end > start)) throw InvalidGrid("grid end must exceed its start");
    step_ = (end - start) / static_cast<Scalar>(n);
  }

  Scalar start() const { return start_; }
  Scalar end() const { return end_; }
  std::size_t intervals() const { return n_; }
  std::size_t nodes() const { return n_ + 1; }
  Scalar step() const { return step_; }

  /// The last node returns `end` itself so endpoints are reproduced exactly.
  Scalar node(std::size_t i) const {
    if (i == n_) return end_;
    return std::fma(static_cast<Scalar>(i), step_, start_);
  }

 private:
  Scalar start_;
  Scalar end_;
  std::size_t n_;
  Scalar step_;
};

template <typename Scalar>
Scalar stretch(Scalar t, Scalar epsilon) {
  return epsilon * t;
}

template <typename Scalar>
Scalar unstretch(Scalar T, Scalar epsilon) {
  return T / epsilon;
}

/// Inner/outer split of [0, t_f].
///
/// `split` is t_p in the problem's own coordinate. The inner grid lives in
/// the stretched variable T = eps*t over [0, T_p]; the outer grid lives in
/// the problem coordinate over [t_p, t_f]. For stretched-frame problems the
/// problem coordinate already is T, so T_p = t_p there.
template <typename Scalar>
struct DecompositionPlan {
  Scalar split;
  UniformGrid<Scalar> inner;
  UniformGrid<Scalar> outer;
  Scalar epsilon;
  Frame frame;

  /// Maps an inner-grid value of T back to the problem coordinate.
  Scalar inner_to_coordinate(Scalar T) const {
    return frame == Frame::Stretched ? T : unstretch(T, epsilon);
  }
};

inline constexpr std::size_t kDefaultInnerIntervals = 10;
inline constexpr std::size_t kDefaultOuterIntervals = 101;

template <typename Scalar>
DecompositionPlan<Scalar> build_decomposition(const GaitProblem<Scalar>& problem, Scalar split,
                                              std::size_t n_inner, std::size_t n_outer) {
  if (!(split > Scalar(0) && split < problem.t_final))
    throw InvalidSplit("split point must lie strictly inside (0, t_f)");
  if (n_inner < 2 || n_outer < 2) throw InvalidGrid("each region needs at least 2 intervals");
  const Scalar inner_end =
      problem.frame == Frame::Stretched ? split : stretch(split, problem.epsilon);
  return DecompositionPlan<Scalar>{split, UniformGrid<Scalar>(Scalar(0), inner_end, n_inner),
                                   UniformGrid<Scalar>(split, problem.t_final, n_outer),
                                   problem.epsilon, problem.frame};
}

/// Split at 1% of the horizon unless one is given.
template <typename Scalar>
DecompositionPlan<Scalar> build_decomposition(const GaitProblem<Scalar>& problem,
                                              std::type_identity_t<std::optional<Scalar>> split = {},
                                              std::size_t n_inner = kDefaultInnerIntervals,
                                              std::size_t n_outer = kDefaultOuterIntervals) {
  return build_decomposition(problem, split.value_or(Scalar(0.01) * problem.t_final), n_inner,
                             n_outer);
}

}  // namespace gaitfd
