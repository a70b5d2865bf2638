#include "msf/xfem/enrichment.hpp"

#include "msf/core/error.hpp"

#include <cmath>
#include <numbers>

namespace msf::xfem {

void tip_polar(const CrackTip& tip, const Point& p, double& r, double& theta) {
    const Point d = p - tip.position;
    const double x1 = d.dot(tip.direction);
    const double x2 = -d.x() * tip.direction.y() + d.y() * tip.direction.x();
    r = std::hypot(x1, x2);
    theta = std::atan2(x2, x1);
}

BranchValues branch_functions(const CrackTip& tip, const Point& p) {
    double r, th;
    tip_polar(tip, p, r, th);
    BranchValues out;
    if (r <= 0) return out;
    const double sr = std::sqrt(r);
    const double s2 = std::sin(0.5 * th), c2 = std::cos(0.5 * th), s = std::sin(th), c = std::cos(th);
    out.f = {sr * s2, sr * c2, sr * s * s2, sr * s * c2};
    const double dr[4] = {0.5 / sr * s2, 0.5 / sr * c2, 0.5 / sr * s * s2, 0.5 / sr * s * c2};
    const double dt[4] = {0.5 * sr * c2, -0.5 * sr * s2, sr * (c * s2 + 0.5 * s * c2), sr * (c * c2 - 0.5 * s * s2)};
    const double ca = tip.direction.x(), sa = tip.direction.y();
    for (int k = 0; k < 4; ++k) {
        const double d1 = dr[k] * c - dt[k] * s / r;
        const double d2 = dr[k] * s + dt[k] * c / r;
        out.grad[k] = {d1 * ca - d2 * sa, d1 * sa + d2 * ca};
    }
    return out;
}

int EnrichedMesh::heaviside_count() const {
    int n = 0;
    for (char h : heaviside) n += h ? 1 : 0;
    return n;
}

int EnrichedMesh::tip_count() const {
    int n = 0;
    for (int t : tip_of_node) n += t >= 0 ? 1 : 0;
    return n;
}

bool EnrichedMesh::has_tip_nodes(int e) const {
    for (int n : mesh->element_nodes(e)) {
        if (tip_of_node[n] >= 0) return true;
    }
    return false;
}

bool EnrichedMesh::is_enriched(int e) const {
    for (int n : mesh->element_nodes(e)) {
        if (heaviside[n] || tip_of_node[n] >= 0) return true;
    }
    return false;
}

namespace {

double grid_distance(double v, double h) {
    const double k = std::round(v / h);
    return std::abs(v - k * h);
}

}  // namespace

EnrichedMesh enrich(const StructuredMesh& mesh, const CrackPolyline& crack, const EnrichmentOptions& options) {
    EnrichedMesh em;
    em.mesh = &mesh;
    em.crack = crack;
    const double h = std::min(mesh.hx(), mesh.hy());
    for (const auto& tip : crack.tips()) {
        MSF_REQUIRE(mesh.locate(tip.position) >= 0 && tip.position.x() > 0 && tip.position.x() < mesh.width() &&
                        tip.position.y() > 0 && tip.position.y() < mesh.height(),
                    "crack tip lies outside the mesh");
        Point p = tip.position;
        for (int tries = 0; tries < 8; ++tries) {
            if (grid_distance(p.x(), mesh.hx()) > 1e-8 && grid_distance(p.y(), mesh.hy()) > 1e-8) break;
            p += 1e-6 * h * tip.direction + 1e-7 * h * Point{-tip.direction.y(), tip.direction.x()};
        }
        if (p != tip.position) em.crack.move_tip(tip.end, p);
    }
    em.tips = em.crack.tips();

    const int ne = mesh.element_count(), nn = mesh.node_count();
    em.cuts.resize(ne);
    em.heaviside.assign(nn, 0);
    em.tip_of_node.assign(nn, -1);
    em.node_side.resize(nn);
    for (int n = 0; n < nn; ++n) em.node_side[n] = em.crack.side(mesh.node_position(n));

    for (int e = 0; e < ne; ++e) em.cuts[e] = cut_element(em.crack, mesh.element_rect(e));
    for (std::size_t t = 0; t < em.tips.size(); ++t) {
        const int e = mesh.locate(em.tips[t].position);
        for (int n : mesh.element_nodes(e)) {
            if (em.tip_of_node[n] >= 0 && em.tip_of_node[n] != static_cast<int>(t)) {
                throw NumericalError("two crack tips share enriched nodes; refine the mesh");
            }
            em.tip_of_node[n] = static_cast<int>(t);
        }
        if (options.tip_radius > 0) {
            for (int n = 0; n < nn; ++n) {
                if ((mesh.node_position(n) - em.tips[t].position).norm() <= options.tip_radius &&
                    em.tip_of_node[n] < 0) {
                    em.tip_of_node[n] = static_cast<int>(t);
                }
            }
        }
    }
    for (int e = 0; e < ne; ++e) {
        if (em.cuts[e].kind != ElementCut::Kind::Cut) continue;
        for (int n : mesh.element_nodes(e)) {
            if (em.tip_of_node[n] < 0) em.heaviside[n] = 1;
        }
    }

    em.first_dof.resize(nn);
    int next = 0;
    for (int n = 0; n < nn; ++n) {
        em.first_dof[n] = next;
        next += em.dofs_per_node(n);
    }
    em.dofs = next;
    return em;
}

std::vector<BasisTerm> element_basis(const EnrichedMesh& em, int e, const Point& p, double side) {
    const auto nodes = em.mesh->element_nodes(e);
    const ShapeValues sv = em.mesh->shape(e, p);
    std::vector<BasisTerm> out;
    out.reserve(24);
    std::array<BranchValues, 2> branch_at_p;
    std::array<bool, 2> have{false, false};
    for (int k = 0; k < 4; ++k) {
        const int n = nodes[k];
        int dof = em.first_dof[n];
        out.push_back({dof, sv.n[k], sv.grad[k]});
        dof += 2;
        if (em.heaviside[n]) {
            const double jump = side - em.node_side[n];
            out.push_back({dof, sv.n[k] * jump, sv.grad[k] * jump});
            dof += 2;
        }
        const int t = em.tip_of_node[n];
        if (t >= 0) {
            if (!have[t]) {
                branch_at_p[t] = branch_functions(em.tips[t], p);
                have[t] = true;
            }
            const BranchValues at_node = branch_functions(em.tips[t], em.mesh->node_position(n));
            const BranchValues& f = branch_at_p[t];
            for (int a = 0; a < 4; ++a) {
                const double shifted = f.f[a] - at_node.f[a];
                out.push_back({dof, sv.n[k] * shifted, sv.grad[k] * shifted + sv.n[k] * f.grad[a]});
                dof += 2;
            }
        }
    }
    return out;
}

}  // namespace msf::xfem
