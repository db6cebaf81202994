#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaitfd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

/// |v(t)| fell below the zero tolerance while evaluating the reduced solution.
class ZeroStiffness : public Error {
 public:
  explicit ZeroStiffness(double t)
      : Error("stiffness vanishes at t = " + std::to_string(t)), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class InvalidSplit : public Error {
 public:
  using Error::Error;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

/// Diagonal lengths disagree or an entry is not finite.
class InvalidSystem : public Error {
 public:
  using Error::Error;
};

/// Thomas forward elimination produced a modified diagonal too small to divide by.
class PivotBreakdown : public Error {
 public:
  explicit PivotBreakdown(std::size_t row)
      : Error("pivot breakdown at row " + std::to_string(row)), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Dense elimination found no usable pivot.
class Singular : public Error {
 public:
  explicit Singular(std::size_t column)
      : Error("singular matrix: no pivot in column " + std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// A region solve failed. Carries the region name ("inner", "outer",
/// "interface") and the node index inside that region's grid.
class SolverBreakdown : public Error {
 public:
  SolverBreakdown(std::string region, std::size_t node, const std::string& what)
      : Error(what + " [" + region + " region, node " + std::to_string(node) + "]"),
        region_(std::move(region)),
        node_(node) {}
  const std::string& region() const noexcept { return region_; }
  std::size_t node() const noexcept { return node_; }

 private:
  std::string region_;
  std::size_t node_;
};

/// A convergence-study level failed; wraps the underlying message.
class LevelFailure : public Error {
 public:
  LevelFailure(std::size_t level, const std::string& what)
      : Error("refinement level " + std::to_string(level) + ": " + what), level_(level) {}
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

}  // namespace gaitfd
