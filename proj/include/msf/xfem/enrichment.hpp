/**
 * @file enrichment.hpp
 * @brief Node classification and the shifted enriched basis.
 *
 * A node carries jump (Heaviside) degrees of freedom when an element of its
 * support is fully cut, and four branch-function degrees of freedom per
 * direction when it belongs to an element holding a tip. Enrichments are
 * shifted by their nodal value so every enriched function vanishes at its
 * own node, and nodal displacements equal the standard degrees of freedom.
 */
#pragma once

#include "msf/xfem/crack.hpp"
#include "msf/xfem/mesh.hpp"

#include <array>
#include <vector>

namespace msf::xfem {

/// The four crack-tip branch functions and their global gradients at p.
struct BranchValues {
    std::array<double, 4> f{};
    std::array<Point, 4> grad{};
};
BranchValues branch_functions(const CrackTip& tip, const Point& p);
/// Polar coordinates of p in the tip frame; theta in (-pi, pi].
void tip_polar(const CrackTip& tip, const Point& p, double& r, double& theta);

struct EnrichedMesh {
    const StructuredMesh* mesh = nullptr;
    CrackPolyline crack;
    std::vector<CrackTip> tips;
    std::vector<ElementCut> cuts;   ///< per element
    std::vector<char> heaviside;    ///< per node
    std::vector<int> tip_of_node;   ///< index into tips, -1 when none
    std::vector<int> first_dof;     ///< per node
    std::vector<double> node_side;  ///< crack side of each node, +/-1
    int dofs = 0;

    int standard_count() const { return mesh->node_count(); }
    int heaviside_count() const;
    int tip_count() const;
    int dofs_per_node(int n) const { return 2 * (1 + (heaviside[n] ? 1 : 0) + (tip_of_node[n] >= 0 ? 4 : 0)); }
    /// True when some node of the element carries branch functions.
    bool has_tip_nodes(int e) const;
    bool is_enriched(int e) const;
};

struct EnrichmentOptions {
    /// Extra radius (mm) around each tip inside which nodes also receive
    /// branch functions; 0 keeps the tip element's nodes only.
    double tip_radius = 0.0;
};

/// Classifies nodes for `crack`. Tips within 1e-8 of a grid line are first
/// nudged forward by 1e-6 element sizes. Throws InvalidArgument if a tip
/// lies outside the mesh.
EnrichedMesh enrich(const StructuredMesh& mesh, const CrackPolyline& crack, const EnrichmentOptions& options = {});

/// One scalar basis function of an element at a point: the x-DOF index
/// (y follows), value and gradient.
struct BasisTerm {
    int dof;
    double value;
    Point grad;
};

/// All basis functions active in element e at p. `side` is the crack side
/// used for jump functions at p (taken from the quadrature cell).
std::vector<BasisTerm> element_basis(const EnrichedMesh& em, int e, const Point& p, double side);

}  // namespace msf::xfem
