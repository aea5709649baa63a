#pragma once

#include <array>

namespace imexdg {

/// Explicit/implicit TR-BDF2 pair sharing weights b and nodes c.
struct ButcherPair {
  double chi = 0.0;
  std::array<std::array<double, 3>, 3> a{};       ///< explicit, strictly lower
  std::array<std::array<double, 3>, 3> a_impl{};  ///< implicit, ESDIRK
  std::array<double, 3> b{};
  std::array<double, 3> c{};
};

/// chi = 2 - sqrt(2), a32 = 1/2.
ButcherPair tableau();

}  // namespace imexdg
