#pragma once

#include <vector>

#include "core/linalg.hpp"

namespace omni {

// Cost standing in for a forbidden pairing. Finite so the solver always
// completes an assignment; callers drop any match that lands on it.
inline constexpr double kForbiddenCost = 1e9;

// Exact minimum-cost one-to-one assignment (Kuhn-Munkres semantics) for a
// dense rows x cols matrix, any shape. Returns col index per row, -1 for
// unassigned rows (only when rows > cols). Shortest augmenting path with
// potentials, O(n^3).
std::vector<int> min_cost_assignment(const Mat& cost);

}  // namespace omni
