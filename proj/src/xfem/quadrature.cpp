#include "msf/xfem/quadrature.hpp"

#include "msf/core/error.hpp"

#include <cmath>
#include <numbers>

namespace msf::xfem {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    MSF_REQUIRE(n >= 1 && n <= 8, "Gauss order must lie in [1, 8]");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    // Newton iteration on the Legendre polynomial from Chebyshev guesses.
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

namespace {

void add_tensor_rule(const Rect& r, int order, double side, std::vector<QuadPoint>& out) {
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    const double hx = r.x1 - r.x0, hy = r.y1 - r.y0;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            out.push_back({{r.x0 + 0.5 * hx * (gx[i] + 1), r.y0 + 0.5 * hy * (gx[j] + 1)},
                           0.25 * hx * hy * gw[i] * gw[j], side});
        }
    }
}

double tri_area(const std::array<Point, 3>& t) {
    return 0.5 * std::abs((t[1] - t[0]).x() * (t[2] - t[0]).y() - (t[1] - t[0]).y() * (t[2] - t[0]).x());
}

void add_triangle_rule(const std::array<Point, 3>& t, int points, double side, std::vector<QuadPoint>& out) {
    const double area = tri_area(t);
    if (area <= 0) return;
    auto at = [&](double l1, double l2, double w) {
        const double l0 = 1.0 - l1 - l2;
        out.push_back({l0 * t[0] + l1 * t[1] + l2 * t[2], w * area, side});
    };
    if (points == 3) {
        for (int k = 0; k < 3; ++k) {
            const double a = 1.0 / 6.0, b = 2.0 / 3.0;
            at(k == 1 ? b : a, k == 2 ? b : a, 1.0 / 3.0);
        }
        return;
    }
    MSF_REQUIRE(points == 7, "triangle rules have 3 or 7 points");
    const double a1 = 0.059715871789770, b1 = 0.470142064105115;
    const double a2 = 0.797426985353087, b2 = 0.101286507323456;
    const double w1 = 0.132394152788506, w2 = 0.125939180544827;
    at(1.0 / 3.0, 1.0 / 3.0, 0.225);
    at(b1, b1, w1);
    at(a1, b1, w1);
    at(b1, a1, w1);
    at(b2, b2, w2);
    at(a2, b2, w2);
    at(b2, a2, w2);
}

// Collapsed Gauss rule on the triangle (apex, b, c): the square [0,1]^2 is
// mapped with the edge xi = 0 shrunk onto the apex.
void add_collapsed_rule(const Point& apex, const Point& b, const Point& c, int order, double side,
                        std::vector<QuadPoint>& out) {
    const double area2 = std::abs((b - apex).x() * (c - apex).y() - (b - apex).y() * (c - apex).x());
    if (area2 <= 0) return;
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    for (int i = 0; i < order; ++i) {
        const double xi = 0.5 * (gx[i] + 1);
        for (int j = 0; j < order; ++j) {
            const double eta = 0.5 * (gx[j] + 1);
            const Point p = apex + xi * ((1 - eta) * (b - apex) + eta * (c - apex));
            out.push_back({p, 0.25 * gw[i] * gw[j] * xi * area2, side});
        }
    }
}

}  // namespace

std::vector<QuadPoint> element_quadrature(const EnrichedMesh& em, int e, const QuadratureOptions& options) {
    std::vector<QuadPoint> out;
    const Rect r = em.mesh->element_rect(e);
    const ElementCut& cut = em.cuts[e];
    const bool branch = em.has_tip_nodes(e);
    const Point centre{0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)};

    if (cut.kind == ElementCut::Kind::None) {
        add_tensor_rule(r, branch ? options.tip_neighbor_order : options.plain_order, em.crack.side(centre), out);
        return out;
    }
    if (cut.kind == ElementCut::Kind::Cut) {
        const int pts = branch ? 7 : options.cut_triangle_points;
        for (const auto& poly : split_rect(r, cut.path)) {
            for (const auto& t : triangulate(poly)) {
                const Point c = (t[0] + t[1] + t[2]) / 3.0;
                add_triangle_rule(t, pts, em.crack.side(c), out);
            }
        }
        return out;
    }
    // Tip element: fan around the tip; the crack from the entry point to the
    // tip is a fan edge, so no triangle straddles it.
    const Point tip = cut.path.back();
    auto loop = boundary_loop_from(r, cut.path.front());
    loop.push_back(cut.path.front());
    for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
        const Point c = (tip + loop[k] + loop[k + 1]) / 3.0;
        add_collapsed_rule(tip, loop[k], loop[k + 1], options.tip_order, em.crack.side(c), out);
    }
    return out;
}

}  // namespace msf::xfem
