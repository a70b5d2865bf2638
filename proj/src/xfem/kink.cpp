#include "msf/xfem/kink.hpp"

#include "msf/core/error.hpp"

#include <cmath>

namespace msf::xfem {

double kink_angle(double k_i, double k_ii) {
    MSF_REQUIRE(k_i != 0.0 || k_ii != 0.0, "kink angle undefined when both stress intensity factors vanish");
    if (k_ii == 0.0) return 0.0;
    const double root = std::sqrt(k_i * k_i + 8.0 * k_ii * k_ii);
    // Two algebraically equal forms of the half-angle tangent; pick the one
    // free of cancellation.
    const double t = k_i > 0 ? -2.0 * k_ii / (k_i + root) : (k_i - root) / (4.0 * k_ii);
    return 2.0 * std::atan(t);
}

double equivalent_sif(double k_i, double k_ii, double theta) {
    const double c = std::cos(0.5 * theta);
    return c * (k_i * c * c - 1.5 * k_ii * std::sin(theta));
}

}  // namespace msf::xfem
