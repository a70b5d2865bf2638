/**
 * @file sif.hpp
 * @brief Mixed-mode stress intensity factors by the domain interaction
 *        integral with Williams near-tip auxiliary fields.
 *
 * K is returned in MPa*sqrt(mm) (the model's native units).
 */
#pragma once

#include "msf/xfem/solver.hpp"

#include <Eigen/Dense>

namespace msf::xfem {

/// Near-tip field for unit K in the tip frame: stress and displacement
/// gradient (d u_i / d x_j), mode 1 or 2.
struct AuxiliaryField {
    Eigen::Matrix2d stress;
    Eigen::Matrix2d grad;
    Eigen::Vector2d u;
};
AuxiliaryField williams_field(int mode, double r, double theta, double shear_modulus, double kappa);

struct SifOptions {
    double radius_factor = 2.5;  ///< integration radius in element sizes
    QuadratureOptions quadrature;
};

struct SifResult {
    double k_i = 0.0;
    double k_ii = 0.0;
    double radius = 0.0;
    int elements = 0;  ///< elements with a non-zero weight gradient
};

/// Throws InvalidArgument if the integration domain reaches the plate
/// boundary or another tip.
SifResult compute_sifs(const EnrichedMesh& em, const Solution& sol, const MacroModel& model, int tip = 0,
                       const SifOptions& options = {});

}  // namespace msf::xfem
