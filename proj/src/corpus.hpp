#pragma once

#include <vector>

#include "functions.hpp"

namespace rh {

// Fixed test corpus for upper-bound ratios: radial parts (shells, power bumps,
// truncated exponentials) crossed with angular parts (1, 2 + cos theta, and
// |Omega|^{r-2} Omega). Deterministic; `count` members, default 20.
std::vector<TestFunction> default_corpus(const AngularProfile &omega, double r, int count = 20);

}  // namespace rh
