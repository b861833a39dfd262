#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace wpn {

using Rational = mpq_class;

// Exact phase-one simplex (Bland's rule). Returns some x >= 0 with A x >= b,
// or nullopt when the system is infeasible.
std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b);

}  // namespace wpn
