#pragma once

#include <numbers>

namespace zladder {

inline constexpr double kPi = std::numbers::pi;

// Euler-Mascheroni constant, and 1 - gamma which appears in the density
// normalization of the ladder anchor.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;
inline constexpr double kOneMinusGamma = 0.422784335098467139393487909918;

}  // namespace zladder
