#include "msf/xfem/sif.hpp"

#include "msf/core/error.hpp"

#include <cmath>
#include <numbers>

namespace msf::xfem {

AuxiliaryField williams_field(int mode, double r, double theta, double mu, double kappa) {
    MSF_REQUIRE(mode == 1 || mode == 2, "mode must be 1 or 2");
    MSF_REQUIRE(r > 0, "auxiliary field needs r > 0");
    const double pi = std::numbers::pi;
    const double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
    const double s3 = std::sin(1.5 * theta), c3 = std::cos(1.5 * theta);
    const double st = 1.0 / std::sqrt(2.0 * pi * r);
    const double amp = std::sqrt(r / (2.0 * pi)) / (2.0 * mu);

    double s11, s22, s12, g1, g2, dg1, dg2;
    if (mode == 1) {
        s11 = st * c * (1 - s * s3);
        s22 = st * c * (1 + s * s3);
        s12 = st * s * c * c3;
        g1 = c * (kappa - 1 + 2 * s * s);
        g2 = s * (kappa + 1 - 2 * c * c);
        dg1 = -0.5 * s * (kappa - 1 + 2 * s * s) + 2 * s * c * c;
        dg2 = 0.5 * c * (kappa + 1 - 2 * c * c) + 2 * s * s * c;
    } else {
        s11 = -st * s * (2 + c * c3);
        s22 = st * s * c * c3;
        s12 = st * c * (1 - s * s3);
        g1 = s * (kappa + 1 + 2 * c * c);
        g2 = -c * (kappa - 1 - 2 * s * s);
        dg1 = 0.5 * c * (kappa + 1 + 2 * c * c) - 2 * s * s * c;
        dg2 = 0.5 * s * (kappa - 1 - 2 * s * s) + 2 * s * c * c;
    }
    AuxiliaryField f;
    f.stress << s11, s12, s12, s22;
    f.u = {amp * g1, amp * g2};
    const double ct = std::cos(theta), sn = std::sin(theta);
    const double g[2] = {g1, g2}, dg[2] = {dg1, dg2};
    for (int i = 0; i < 2; ++i) {
        const double du_dr = amp * g[i] / (2.0 * r);
        const double du_dt = amp * dg[i];
        f.grad(i, 0) = du_dr * ct - du_dt * sn / r;
        f.grad(i, 1) = du_dr * sn + du_dt * ct / r;
    }
    return f;
}

SifResult compute_sifs(const EnrichedMesh& em, const Solution& sol, const MacroModel& model, int tip,
                       const SifOptions& options) {
    const StructuredMesh& mesh = *em.mesh;
    MSF_REQUIRE(tip >= 0 && tip < static_cast<int>(em.tips.size()), "no such crack tip");
    const CrackTip& ct = em.tips[tip];
    SifResult res;
    res.radius = options.radius_factor * std::max(mesh.hx(), mesh.hy());
    const double rd = res.radius;

    for (std::size_t t = 0; t < em.tips.size(); ++t) {
        if (static_cast<int>(t) != tip && (em.tips[t].position - ct.position).norm() < 2.0 * rd) {
            throw InvalidArgument("interaction-integral domain reaches another crack tip");
        }
    }
    std::vector<double> q(mesh.node_count(), 0.0);
    for (int n = 0; n < mesh.node_count(); ++n) q[n] = (mesh.node_position(n) - ct.position).norm() <= rd ? 1.0 : 0.0;

    Eigen::Matrix2d R;
    R << ct.direction.x(), ct.direction.y(), -ct.direction.y(), ct.direction.x();
    const double mu = model.shear_mpa(), kappa = model.kappa();
    const double tol = 1e-9 * std::max(mesh.hx(), mesh.hy());
    double I[2] = {0.0, 0.0};

    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto nodes = mesh.element_nodes(e);
        double qmin = 1, qmax = 0;
        for (int n : nodes) {
            qmin = std::min(qmin, q[n]);
            qmax = std::max(qmax, q[n]);
        }
        if (qmax == 0.0) continue;
        for (int n : nodes) {
            const Point x = mesh.node_position(n);
            if (x.x() < tol || x.y() < tol || x.x() > mesh.width() - tol || x.y() > mesh.height() - tol) {
                throw InvalidArgument("interaction-integral domain reaches the plate boundary");
            }
        }
        if (qmin == qmax) continue;
        ++res.elements;
        for (const auto& qp : element_quadrature(em, e, options.quadrature)) {
            const ShapeValues sv = mesh.shape(e, qp.x);
            Eigen::Vector2d gq = Eigen::Vector2d::Zero();
            for (int k = 0; k < 4; ++k) gq += q[nodes[k]] * sv.grad[k];
            gq = R * gq;
            const FieldSample f = evaluate(em, sol, model, e, qp.x, qp.side);
            Eigen::Matrix2d sig;
            sig << f.stress[0], f.stress[2], f.stress[2], f.stress[1];
            sig = R * sig * R.transpose();
            const Eigen::Matrix2d grad = R * f.grad * R.transpose();

            double r, th;
            tip_polar(ct, qp.x, r, th);
            for (int mode = 1; mode <= 2; ++mode) {
                const AuxiliaryField aux = williams_field(mode, r, th, mu, kappa);
                const Eigen::Matrix2d eps_aux = 0.5 * (aux.grad + aux.grad.transpose());
                const double w = (sig.array() * eps_aux.array()).sum();
                double integrand = 0.0;
                for (int j = 0; j < 2; ++j) {
                    double term = 0.0;
                    for (int i = 0; i < 2; ++i) term += sig(i, j) * aux.grad(i, 0) + aux.stress(i, j) * grad(i, 0);
                    if (j == 0) term -= w;
                    integrand += term * gq[j];
                }
                I[mode - 1] += integrand * qp.weight;
            }
        }
    }
    const double estar = model.effective_modulus();
    res.k_i = 0.5 * estar * I[0];
    res.k_ii = 0.5 * estar * I[1];
    return res;
}

}  // namespace msf::xfem
