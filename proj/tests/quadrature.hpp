#pragma once

#include <cstddef>

namespace testutil {

// Composite Simpson with a fixed even panel count; robust against
// integrands carrying a small noise floor (adaptive refinement would chase
// the noise forever).
template <typename F>
double integrate(const F& f, double a, double b, std::size_t panels = 4096) {
  if (panels & 1) ++panels;
  double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i)
    sum += f(a + h * static_cast<double>(i)) * (i & 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace testutil
