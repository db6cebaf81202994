#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "gaitfd/errors.hpp"

namespace gaitfd {

/// Scalar coefficient of one time argument. Must be pure; the solver may
/// evaluate it from several threads at once.
template <typename Scalar>
using CoefficientFn = std::function<Scalar(Scalar)>;

/// Coordinate in which a problem's coefficients and boundary data are stated.
///
/// Physical problems read  z'' + eps*mu(t)*z' + v(t)*z = f(t)  on [0, t_f].
/// Stretched problems are already written in the boundary-layer variable
/// T = eps*t and read  eps^2*Z'' + eps^2*mu(T)*Z' + v(T)*Z = f(T)  on [0, t_f].
enum class Frame { Physical, Stretched };

/// Linear second-order two-point BVP for the vertical centre-of-mass motion.
///
/// `stiffness` is stored exactly as it multiplies z in the governing
/// equation, sign included; the built-in examples all carry negative values.
template <typename Scalar>
struct GaitProblem {
  Scalar epsilon{};
  CoefficientFn<Scalar> damping;
  CoefficientFn<Scalar> stiffness;
  Scalar gravity{};
  Scalar f1{};
  Scalar f2{};
  Scalar t_final{};
  CoefficientFn<Scalar> forcing;
  Frame frame = Frame::Physical;

  /// Problem-coordinate units per unit of physical time.
  Scalar time_scale() const { return frame == Frame::Stretched ? epsilon : Scalar(1); }

  /// Copy with a different perturbation parameter; coefficients are shared.
  GaitProblem with_epsilon(Scalar eps) const {
    if (!(eps > Scalar(0))) throw InvalidProblem("epsilon must be positive");
    GaitProblem copy = *this;
    copy.epsilon = eps;
    return copy;
  }
};

/// Builds a validated problem. An empty `forcing` means the constant -g.
template <typename Scalar>
GaitProblem<Scalar> make_problem(Scalar epsilon, CoefficientFn<Scalar> damping,
                                 CoefficientFn<Scalar> stiffness, Scalar gravity, Scalar f1,
                                 Scalar f2, Scalar t_final, CoefficientFn<Scalar> forcing = {},
                                 Frame frame = Frame::Physical) {
  if (!(epsilon > Scalar(0))) throw InvalidProblem("epsilon must be positive");
  if (!(t_final > Scalar(0))) throw InvalidProblem("t_f must be positive");
  if (!damping || !stiffness) throw InvalidProblem("damping and stiffness are required");
  if (!forcing) forcing = [g = gravity](Scalar) { return -g; };
  return GaitProblem<Scalar>{epsilon,         std::move(damping), std::move(stiffness),
                             gravity,         f1,                 f2,
                             t_final,         std::move(forcing), frame};
}

/// Left-hand side of the governing equation for a candidate solution with
/// the given value and derivatives at t (derivatives in the problem coordinate).
template <typename Scalar>
Scalar apply_operator(const GaitProblem<Scalar>& p, Scalar t, Scalar z, Scalar dz, Scalar d2z) {
  const Scalar mu = p.damping(t);
  const Scalar v = p.stiffness(t);
  if (p.frame == Frame::Stretched) {
    const Scalar e2 = p.epsilon * p.epsilon;
    return e2 * d2z + e2 * mu * dz + v * z;
  }
  return d2z + p.epsilon * mu * dz + v * z;
}

inline constexpr double kZeroStiffnessTolerance = 1e-14;

/// Solution of the reduced (eps -> 0) equation v(t) z = f(t).
template <typename Scalar>
Scalar reduced_solution(const GaitProblem<Scalar>& p, Scalar t) {
  const Scalar v = p.stiffness(t);
  if (std::abs(v) < Scalar(kZeroStiffnessTolerance)) throw ZeroStiffness(static_cast<double>(t));
  return p.forcing(t) / v;
}

/// A smooth function together with its first two derivatives.
template <typename Scalar>
struct SmoothFunction {
  CoefficientFn<Scalar> value;
  CoefficientFn<Scalar> first;
  CoefficientFn<Scalar> second;
};

/// Manufactured problem whose exact solution is `exact`: the forcing is
/// exact'' + eps*mu*exact' + v*exact and the boundary data are sampled from it.
template <typename Scalar>
GaitProblem<Scalar> manufacture(const SmoothFunction<Scalar>& exact, Scalar epsilon,
                                CoefficientFn<Scalar> damping, CoefficientFn<Scalar> stiffness,
                                Scalar t_final) {
  auto forcing = [exact, epsilon, damping, stiffness](Scalar t) {
    return exact.second(t) + epsilon * damping(t) * exact.first(t) +
           stiffness(t) * exact.value(t);
  };
  return make_problem<Scalar>(epsilon, std::move(damping), std::move(stiffness), Scalar(0),
                              exact.value(Scalar(0)), exact.value(t_final), t_final,
                              std::move(forcing), Frame::Physical);
}

// ---------------------------------------------------------------------------
// Built-in examples

enum class Example { One = 1, Two = 2, Three = 3 };

/// AsWritten follows the printed equations; TableConsistent carries the
/// corrections needed to agree with the published solution tables.
enum class Variant { AsWritten, TableConsistent };

struct PresetId {
  Example example = Example::One;
  Variant variant = Variant::TableConsistent;
};

inline constexpr double kDefaultPresetEpsilon = 0.001;

/// Example problems on T in [0, 1], stated in the stretched frame.
///
///  1: eps^2 Z'' + eps^2 e^T Z' - 2 e^{-T} Z = -9.8,  Z(0) = 4,   Z(1) = 2
///  2: eps^2 Z'' + eps^2 T Z'   - 1000 T Z   = -10,   Z(0) = 1,   Z(1) = 0.1
///  3: eps^2 Z''                - e^T Z      = -10,   Z(0) = 9.6, Z(1) = 3
///
/// TableConsistent uses stiffness -2 e^{+T} for example 1 and Z(1) = 0.01
/// for example 2; example 3 is identical in both variants.
template <typename Scalar = double>
GaitProblem<Scalar> preset(PresetId id, Scalar epsilon = Scalar(kDefaultPresetEpsilon)) {
  const bool fixed = id.variant == Variant::TableConsistent;
  switch (id.example) {
    case Example::One: {
      CoefficientFn<Scalar> stiffness;
      if (fixed)
        stiffness = [](Scalar T) { return Scalar(-2) * std::exp(T); };
      else
        stiffness = [](Scalar T) { return Scalar(-2) * std::exp(-T); };
      return make_problem<Scalar>(
          epsilon, [](Scalar T) { return std::exp(T); }, std::move(stiffness), Scalar(9.8),
          Scalar(4), Scalar(2), Scalar(1), {}, Frame::Stretched);
    }
    case Example::Two:
      return make_problem<Scalar>(
          epsilon, [](Scalar T) { return T; }, [](Scalar T) { return Scalar(-1000) * T; },
          Scalar(10), Scalar(1), fixed ? Scalar(0.01) : Scalar(0.1), Scalar(1), {},
          Frame::Stretched);
    case Example::Three:
      return make_problem<Scalar>(
          epsilon, [](Scalar) { return Scalar(0); }, [](Scalar T) { return -std::exp(T); },
          Scalar(10), Scalar(9.6), Scalar(3), Scalar(1), {}, Frame::Stretched);
  }
  throw InvalidProblem("unknown example");
}

/// Split point implied by the published tables' first interior node.
inline double preset_default_split(Example e) { return e == Example::One ? 0.02 : 0.01; }

std::string_view preset_title(Example e);
std::string_view preset_equation(PresetId id);
/// Human-readable note on how the variant departs from the printed equation.
std::string_view preset_discrepancy(PresetId id);

}  // namespace gaitfd
