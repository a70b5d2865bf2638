/**
 * @file stress.hpp
 * @brief Symmetric stress tensor in Voigt order and its von Mises invariant.
 */
#pragma once

#include <array>
#include <cmath>

namespace msf {

/// xx, yy, zz, xy, yz, zx
using Voigt6 = std::array<double, 6>;

inline double von_mises(const Voigt6& s) {
    const double a = s[0] - s[1], b = s[1] - s[2], c = s[2] - s[0];
    return std::sqrt(0.5 * (a * a + b * b + c * c) + 3.0 * (s[3] * s[3] + s[4] * s[4] + s[5] * s[5]));
}

}  // namespace msf
