#pragma once

#include "mtrans/rational.hpp"

#include <optional>
#include <vector>

namespace mtrans {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// A point x >= 0 with A x = b, or nullopt when none exists. Exact phase-one
/// simplex with Bland's rule, so it always terminates.
std::optional<std::vector<Rational>> find_nonnegative_solution(const RationalMatrix& A, const std::vector<Rational>& b);

}  // namespace mtrans
