#pragma once

#include <array>
#include <span>

#include "gaitfd/model.hpp"

namespace gaitfd {

/// One published row: a time node and the solution at each tabulated eps.
struct ReferenceRow {
  double t;
  std::array<double, 4> values;
};

/// Published solution table for one example. Column order is kept exactly
/// as published: 0.0009, 0.009, 0.001, 0.01.
struct ReferenceTable {
  Example example;
  std::array<double, 4> epsilons;
  std::span<const ReferenceRow> rows;

  /// Column index of `eps`, or -1.
  int column(double eps) const {
    for (int c = 0; c < 4; ++c)
      if (epsilons[static_cast<std::size_t>(c)] == eps) return c;
    return -1;
  }
};

inline constexpr std::array<double, 4> kTabulatedEpsilons{0.0009, 0.009, 0.001, 0.01};

const ReferenceTable& reference_table(Example e);

}  // namespace gaitfd
