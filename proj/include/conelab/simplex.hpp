#pragma once

#include "conelab/linalg.hpp"

#include <optional>

namespace conelab {

/// Some x >= 0 with a x = b, or nullopt if none exists. Exact phase-one
/// simplex with Bland's rule, so it always terminates.
std::optional<Vector> nonnegative_solution(const Matrix& a, std::span<const Rational> b);

}  // namespace conelab
