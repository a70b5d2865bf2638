#include "msf/xfem/solver.hpp"

#include "msf/core/error.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>

namespace msf::xfem {

LoadCase remote_tension(double stress) {
    LoadCase lc;
    lc.top_traction = stress;
    lc.bottom_traction = stress;
    return lc;
}

namespace {

std::vector<Constraint> default_supports(const StructuredMesh& mesh) {
    const int j = mesh.ny() / 2;
    return {{mesh.node(mesh.nx(), j), 0, 0.0}, {mesh.node(mesh.nx(), j), 1, 0.0}, {mesh.node(mesh.nx(), j + 1), 0, 0.0}};
}

}  // namespace

Solution solve(const EnrichedMesh& em, const MacroModel& model, const LoadCase& load,
               const QuadratureOptions& quadrature) {
    const StructuredMesh& mesh = *em.mesh;
    const Eigen::Matrix3d D = model.elasticity();
    const auto constraints = load.constraints.empty() ? default_supports(mesh) : load.constraints;

    Solution sol;
    sol.dofs = Eigen::VectorXd::Zero(em.dofs);
    std::vector<int> eq(em.dofs, 0);
    for (const auto& c : constraints) {
        MSF_REQUIRE(c.node >= 0 && c.node < mesh.node_count() && (c.component == 0 || c.component == 1),
                    "constraint refers to a missing node or component");
        const int dof = em.first_dof[c.node] + c.component;
        eq[dof] = -1;
        sol.dofs[dof] = c.value;
    }
    int neq = 0;
    for (int d = 0; d < em.dofs; ++d) eq[d] = eq[d] < 0 ? -1 : neq++;
    sol.equations = neq;

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(neq);
    auto add_force = [&](int node, double fy) {
        const int q = eq[em.first_dof[node] + 1];
        if (q >= 0) rhs[q] += fy;
    };
    for (int i = 0; i < mesh.nx(); ++i) {
        const double f_top = 0.5 * load.top_traction * mesh.hx();
        const double f_bot = 0.5 * load.bottom_traction * mesh.hx();
        add_force(mesh.node(i, mesh.ny()), f_top);
        add_force(mesh.node(i + 1, mesh.ny()), f_top);
        add_force(mesh.node(i, 0), -f_bot);
        add_force(mesh.node(i + 1, 0), -f_bot);
    }

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.element_count()) * 64);
    Eigen::MatrixXd ke, B;
    std::vector<int> edof;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto qps = element_quadrature(em, e, quadrature);
        ke.setZero(0, 0);
        for (const auto& qp : qps) {
            const auto basis = element_basis(em, e, qp.x, qp.side);
            const int nb = static_cast<int>(basis.size());
            if (ke.rows() == 0) {
                ke.setZero(2 * nb, 2 * nb);
                edof.resize(2 * nb);
                for (int k = 0; k < nb; ++k) {
                    edof[2 * k] = basis[k].dof;
                    edof[2 * k + 1] = basis[k].dof + 1;
                }
            }
            B.setZero(3, 2 * nb);
            for (int k = 0; k < nb; ++k) {
                const Point& g = basis[k].grad;
                B(0, 2 * k) = g.x();
                B(1, 2 * k + 1) = g.y();
                B(2, 2 * k) = g.y();
                B(2, 2 * k + 1) = g.x();
            }
            ke.noalias() += B.transpose() * (D * B) * qp.weight;
        }
        for (int a = 0; a < ke.rows(); ++a) {
            const int qa = eq[edof[a]];
            if (qa < 0) continue;
            for (int b = 0; b < ke.cols(); ++b) {
                const int qb = eq[edof[b]];
                if (qb >= 0) triplets.emplace_back(qa, qb, ke(a, b));
                else rhs[qa] -= ke(a, b) * sol.dofs[edof[b]];
            }
        }
    }

    Eigen::SparseMatrix<double> K(neq, neq);
    K.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
    if (ldlt.info() != Eigen::Success) throw NumericalError("stiffness factorization failed (singular system)");
    const Eigen::VectorXd x = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success || !x.allFinite()) throw NumericalError("non-finite displacement solution");
    const Eigen::VectorXd pivots = ldlt.vectorD();
    if ((pivots.array() <= 0).any()) throw NumericalError("stiffness matrix is not positive definite");
    for (int d = 0; d < em.dofs; ++d) {
        if (eq[d] >= 0) sol.dofs[d] = x[eq[d]];
    }
    return sol;
}

FieldSample evaluate(const EnrichedMesh& em, const Solution& sol, const MacroModel& model, int e, const Point& p,
                     double side) {
    FieldSample s;
    s.u.setZero();
    s.grad.setZero();
    for (const auto& t : element_basis(em, e, p, side)) {
        const double ux = sol.dofs[t.dof], uy = sol.dofs[t.dof + 1];
        s.u += t.value * Eigen::Vector2d(ux, uy);
        s.grad(0, 0) += ux * t.grad.x();
        s.grad(0, 1) += ux * t.grad.y();
        s.grad(1, 0) += uy * t.grad.x();
        s.grad(1, 1) += uy * t.grad.y();
    }
    s.strain = {s.grad(0, 0), s.grad(1, 1), s.grad(0, 1) + s.grad(1, 0)};
    s.stress = model.elasticity() * s.strain;
    return s;
}

Eigen::Vector2d nodal_displacement(const EnrichedMesh& em, const Solution& sol, int node) {
    const int d = em.first_dof[node];
    return {sol.dofs[d], sol.dofs[d + 1]};
}

double von_mises(const Eigen::Vector3d& s, const MacroModel& model) {
    const double szz = model.mode == AnalysisMode::PlaneStrain ? model.poisson * (s[0] + s[1]) : 0.0;
    const double a = s[0] - s[1], b = s[1] - szz, c = szz - s[0];
    return std::sqrt(0.5 * (a * a + b * b + c * c) + 3.0 * s[2] * s[2]);
}

}  // namespace msf::xfem
