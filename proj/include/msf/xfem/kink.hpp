/**
 * @file kink.hpp
 * @brief Crack deflection by the maximum circumferential stress criterion.
 */
#pragma once

namespace msf::xfem {

/// Deflection angle (rad) maximizing the hoop stress ahead of the tip;
/// positive K_II turns the crack to negative angles. Exactly 0 when
/// K_II = 0. Throws InvalidArgument when both factors are zero.
double kink_angle(double k_i, double k_ii);

/// Mode-I-equivalent factor cos(t/2) [K_I cos^2(t/2) - 1.5 K_II sin t].
double equivalent_sif(double k_i, double k_ii, double theta);

}  // namespace msf::xfem
