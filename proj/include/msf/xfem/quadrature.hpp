/**
 * @file quadrature.hpp
 * @brief Integration points for plain, cut and tip elements.
 *
 * Plain elements use tensor Gauss rules. Cut elements are split along the
 * crack and each piece is triangulated; the tip element is fanned into
 * triangles around the tip, each integrated with a collapsed (Duffy) Gauss
 * rule whose Jacobian cancels the 1/r of the branch-function gradients.
 */
#pragma once

#include "msf/xfem/enrichment.hpp"

#include <vector>

namespace msf::xfem {

struct QuadPoint {
    Point x;
    double weight;  ///< physical area weight
    double side;    ///< crack side of the cell holding the point
};

struct QuadratureOptions {
    int plain_order = 2;        ///< Gauss points per direction, unenriched and jump-only
    int tip_neighbor_order = 5; ///< uncut elements with branch functions
    int cut_triangle_points = 3;///< 3 or 7 (7 when branch functions are active)
    int tip_order = 5;          ///< collapsed Gauss points per direction per fan triangle
};

/// 1D Gauss-Legendre points and weights on [-1, 1]; n in [1, 8].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

std::vector<QuadPoint> element_quadrature(const EnrichedMesh& em, int e, const QuadratureOptions& options = {});

}  // namespace msf::xfem
