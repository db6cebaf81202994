#include "gaitfd/model.hpp"

namespace gaitfd {

std::string_view preset_title(Example e) {
  switch (e) {
    case Example::One: return "Exponential stiffness and damping";
    case Example::Two: return "Linear damping and linear stiffness";
    case Example::Three: return "Pure stiffness-driven system";
  }
  return "";
}

std::string_view preset_equation(PresetId id) {
  const bool fixed = id.variant == Variant::TableConsistent;
  switch (id.example) {
    case Example::One:
      return fixed ? "eps^2 Z'' + eps^2 e^T Z' - 2 e^T Z = -9.8,  Z(0) = 4, Z(1) = 2"
                   : "eps^2 Z'' + eps^2 e^T Z' - 2 e^-T Z = -9.8,  Z(0) = 4, Z(1) = 2";
    case Example::Two:
      return fixed ? "eps^2 Z'' + eps^2 T Z' - 1000 T Z = -10,  Z(0) = 1, Z(1) = 0.01"
                   : "eps^2 Z'' + eps^2 T Z' - 1000 T Z = -10,  Z(0) = 1, Z(1) = 0.1";
    case Example::Three: return "eps^2 Z'' - e^T Z = -10,  Z(0) = 9.6, Z(1) = 3";
  }
  return "";
}

std::string_view preset_discrepancy(PresetId id) {
  switch (id.example) {
    case Example::One:
      return id.variant == Variant::TableConsistent
                 ? "stiffness -2e^{+T}: the printed -2e^{-T} has reduced solution 4.9e^{+T}, "
                   "but the tabulated interior values follow 4.9e^{-T}"
                 : "as printed; the reduced solution 4.9e^{+T} disagrees with the tabulated "
                   "values";
    case Example::Two:
      return id.variant == Variant::TableConsistent
                 ? "right boundary 0.01: the printed Z(1) = 0.1 disagrees with the tabulated "
                   "final row 0.0100"
                 : "as printed; Z(1) = 0.1 disagrees with the tabulated final row 0.0100";
    case Example::Three: return "none; both variants coincide";
  }
  return "";
}

}  // namespace gaitfd
