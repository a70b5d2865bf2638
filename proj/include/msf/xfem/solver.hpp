/**
 * @file solver.hpp
 * @brief Assembly and direct solution of the enriched elasticity system,
 *        and field evaluation from the solution.
 *
 * Stiffness is per unit thickness; tractions are stresses (MPa) applied
 * along y on the top and bottom edges.
 */
#pragma once

#include "msf/xfem/enrichment.hpp"
#include "msf/xfem/model.hpp"
#include "msf/xfem/quadrature.hpp"

#include <Eigen/Dense>

#include <vector>

namespace msf::xfem {

struct Constraint {
    int node;
    int component;  ///< 0 = x, 1 = y
    double value = 0.0;
};

struct LoadCase {
    double top_traction = 0.0;     ///< sigma_yy pulling the top edge up
    double bottom_traction = 0.0;  ///< sigma_yy pulling the bottom edge down
    /// Empty: three rigid-body constraints on the right edge next to mid-height.
    std::vector<Constraint> constraints;
};

/// Uniform remote tension on both loaded edges.
LoadCase remote_tension(double stress);

struct Solution {
    Eigen::VectorXd dofs;  ///< all degrees of freedom, constrained values included
    int equations = 0;
};

/// Throws NumericalError on a singular or non-finite system.
Solution solve(const EnrichedMesh& em, const MacroModel& model, const LoadCase& load,
               const QuadratureOptions& quadrature = {});

struct FieldSample {
    Eigen::Vector2d u;
    Eigen::Matrix2d grad;    ///< d u_i / d x_j
    Eigen::Vector3d strain;  ///< xx, yy, engineering xy
    Eigen::Vector3d stress;  ///< xx, yy, xy (MPa)
};

FieldSample evaluate(const EnrichedMesh& em, const Solution& sol, const MacroModel& model, int e, const Point& p,
                     double side);
/// Nodal displacement (the standard degrees of freedom).
Eigen::Vector2d nodal_displacement(const EnrichedMesh& em, const Solution& sol, int node);
/// Von Mises stress of (xx, yy, xy) under the analysis mode's sigma_zz.
double von_mises(const Eigen::Vector3d& stress, const MacroModel& model);

}  // namespace msf::xfem
