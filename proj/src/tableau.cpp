#include "imexdg/tableau.hpp"

#include <cmath>

namespace imexdg {

ButcherPair tableau() {
  ButcherPair t;
  const double chi = 2.0 - std::sqrt(2.0);
  const double a32 = 0.5;
  const double outer = 0.5 - 0.25 * chi;
  t.chi = chi;

  t.a[1][0] = chi;
  t.a[2][0] = 1.0 - a32;
  t.a[2][1] = a32;

  t.a_impl[1][0] = 0.5 * chi;
  t.a_impl[1][1] = 0.5 * chi;
  t.a_impl[2][0] = outer;
  t.a_impl[2][1] = outer;
  t.a_impl[2][2] = 0.5 * chi;

  t.b = {outer, outer, 0.5 * chi};
  t.c = {0.0, chi, 1.0};
  return t;
}

}  // namespace imexdg
