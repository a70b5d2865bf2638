#include "msf/xfem/crack.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msf::xfem {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const double d1 = cross(q2 - q1, p1 - q1), d2 = cross(q2 - q1, p2 - q1);
    const double d3 = cross(p2 - p1, q1 - p1), d4 = cross(p2 - p1, q2 - p1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// Liang-Barsky clip of p0 + t (p1 - p0), t in [0, 1], to a closed rectangle.
bool clip(const Point& p0, const Point& p1, const Rect& r, double& t0, double& t1) {
    const Point d = p1 - p0;
    t0 = 0.0;
    t1 = 1.0;
    const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
    const double q[4] = {p0.x() - r.x0, r.x1 - p0.x(), p0.y() - r.y0, r.y1 - p0.y()};
    for (int k = 0; k < 4; ++k) {
        if (p[k] == 0.0) {
            if (q[k] < 0) return false;
            continue;
        }
        const double t = q[k] / p[k];
        if (p[k] < 0) t0 = std::max(t0, t);
        else t1 = std::min(t1, t);
    }
    return t1 > t0;
}

// Perimeter coordinate in [0, 4): side index plus fraction along it, CCW
// from the bottom-left corner.
double perimeter_coord(const Rect& r, const Point& p) {
    const double w = r.x1 - r.x0, h = r.y1 - r.y0;
    const double eps = 1e-9 * std::max(w, h);
    if (std::abs(p.y() - r.y0) <= eps && p.x() < r.x1 - eps) return std::clamp((p.x() - r.x0) / w, 0.0, 1.0);
    if (std::abs(p.x() - r.x1) <= eps && p.y() < r.y1 - eps) return 1.0 + std::clamp((p.y() - r.y0) / h, 0.0, 1.0);
    if (std::abs(p.y() - r.y1) <= eps && p.x() > r.x0 + eps) return 2.0 + std::clamp((r.x1 - p.x()) / w, 0.0, 1.0);
    return 3.0 + std::clamp((r.y1 - p.y()) / h, 0.0, 1.0 - 1e-15);
}

std::array<Point, 4> corners(const Rect& r) { return {Point{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}}; }

// Boundary points strictly between perimeter coordinates a and b (CCW).
std::vector<Point> corners_between(const Rect& r, double a, double b) {
    const auto c = corners(r);
    std::vector<Point> out;
    if (b <= a) b += 4.0;
    for (int k = 1; k <= 8; ++k) {
        if (k > a && k < b) out.push_back(c[k % 4]);
    }
    return out;
}

bool on_boundary(const Rect& r, const Point& p) {
    const double eps = 1e-9 * std::max(r.x1 - r.x0, r.y1 - r.y0);
    return std::abs(p.x() - r.x0) <= eps || std::abs(p.x() - r.x1) <= eps || std::abs(p.y() - r.y0) <= eps ||
           std::abs(p.y() - r.y1) <= eps;
}

double signed_area(const std::vector<Point>& poly) {
    double a = 0;
    for (std::size_t k = 0; k < poly.size(); ++k) a += cross(poly[k], poly[(k + 1) % poly.size()]);
    return 0.5 * a;
}

}  // namespace

CrackPolyline::CrackPolyline(std::vector<Point> vertices, bool front_is_tip)
    : vertices_(std::move(vertices)), front_is_tip_(front_is_tip) {
    MSF_REQUIRE(vertices_.size() >= 2, "a crack needs at least two vertices");
    validate();
}

CrackPolyline CrackPolyline::edge(double length, double y, double x_mouth) {
    MSF_REQUIRE(length > 0, "crack length must be positive");
    return CrackPolyline({{x_mouth, y}, {x_mouth + length, y}}, false);
}

CrackPolyline CrackPolyline::center(const Point& mid, double length) {
    MSF_REQUIRE(length > 0, "crack length must be positive");
    return CrackPolyline({mid - Point{0.5 * length, 0}, mid + Point{0.5 * length, 0}}, true);
}

std::vector<CrackTip> CrackPolyline::tips() const {
    std::vector<CrackTip> out;
    const std::size_t n = vertices_.size();
    if (front_is_tip_) out.push_back({vertices_[0], (vertices_[0] - vertices_[1]).normalized(), 0});
    out.push_back({vertices_[n - 1], (vertices_[n - 1] - vertices_[n - 2]).normalized(), 1});
    return out;
}

double CrackPolyline::length() const {
    double l = 0;
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) l += (vertices_[k + 1] - vertices_[k]).norm();
    return l;
}

double CrackPolyline::side(const Point& p) const {
    const std::size_t ns = vertices_.size() - 1;
    double best = std::numeric_limits<double>::infinity();
    std::size_t seg = 0;
    double tbest = 0;
    for (std::size_t k = 0; k < ns; ++k) {
        const Point a = vertices_[k], d = vertices_[k + 1] - a;
        const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
        const double dist = (a + t * d - p).squaredNorm();
        if (dist < best) {
            best = dist;
            seg = k;
            tbest = t;
        }
    }
    auto normal = [&](std::size_t k) {
        const Point d = (vertices_[k + 1] - vertices_[k]).normalized();
        return Point{-d.y(), d.x()};
    };
    Point n = normal(seg), foot = vertices_[seg] + tbest * (vertices_[seg + 1] - vertices_[seg]);
    if (tbest == 0.0 && seg > 0) n = (normal(seg) + normal(seg - 1)).normalized();
    if (tbest == 1.0 && seg + 1 < ns) n = (normal(seg) + normal(seg + 1)).normalized();
    return (p - foot).dot(n) >= 0 ? 1.0 : -1.0;
}

void CrackPolyline::extend(int end, const Point& new_tip, double kink) {
    if (end == 1) vertices_.push_back(new_tip);
    else {
        MSF_REQUIRE(front_is_tip_, "the first vertex of an edge crack is its mouth");
        vertices_.insert(vertices_.begin(), new_tip);
    }
    kinks_.push_back(kink);
    validate();
}

void CrackPolyline::move_tip(int end, const Point& p) {
    MSF_REQUIRE(end == 1 || front_is_tip_, "the first vertex of an edge crack is its mouth");
    (end == 1 ? vertices_.back() : vertices_.front()) = p;
}

void CrackPolyline::validate() const {
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        MSF_REQUIRE((vertices_[k + 1] - vertices_[k]).norm() > 0, "crack segments must have positive length");
    }
    for (std::size_t a = 0; a + 1 < vertices_.size(); ++a) {
        for (std::size_t b = a + 2; b + 1 < vertices_.size(); ++b) {
            MSF_REQUIRE(!segments_intersect(vertices_[a], vertices_[a + 1], vertices_[b], vertices_[b + 1]),
                        "crack polyline intersects itself");
        }
    }
}

ElementCut cut_element(const CrackPolyline& crack, const Rect& rect) {
    const auto& v = crack.vertices();
    const double tol = 1e-10 * std::max(rect.x1 - rect.x0, rect.y1 - rect.y0);
    std::vector<std::vector<Point>> chains;
    bool last_open = false;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        double t0, t1;
        if (!clip(v[k], v[k + 1], rect, t0, t1) || (t1 - t0) * (v[k + 1] - v[k]).norm() <= tol) {
            last_open = false;
            continue;
        }
        const Point a = v[k] + t0 * (v[k + 1] - v[k]), b = v[k] + t1 * (v[k + 1] - v[k]);
        if (last_open && t0 == 0.0) chains.back().push_back(b);
        else chains.push_back({a, b});
        last_open = t1 == 1.0;
    }
    ElementCut out;
    if (chains.empty()) return out;
    if (chains.size() > 1) throw NumericalError("crack crosses one element more than once; refine the mesh");
    auto path = chains.front();
    const bool start_in = !on_boundary(rect, path.front()), end_in = !on_boundary(rect, path.back());
    if (start_in && end_in) throw NumericalError("both crack tips lie in one element; refine the mesh");
    if (!start_in && !end_in) {
        const Point mid = 0.5 * (path[0] + path[1]);
        if (path.size() == 2 && on_boundary(rect, mid)) return out;  // runs along an edge
        out.kind = ElementCut::Kind::Cut;
        out.path = std::move(path);
        return out;
    }
    if (start_in) {
        if (!crack.front_is_tip()) throw NumericalError("crack mouth lies inside the domain");
        std::reverse(path.begin(), path.end());
        out.tip_end = 0;
    } else {
        out.tip_end = 1;
    }
    out.kind = ElementCut::Kind::Tip;
    out.path = std::move(path);
    return out;
}

std::vector<std::array<Point, 3>> triangulate(std::vector<Point> poly) {
    std::vector<Point> clean;
    for (const auto& p : poly) {
        if (clean.empty() || (p - clean.back()).norm() > 1e-14) clean.push_back(p);
    }
    while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-14) clean.pop_back();
    poly = std::move(clean);
    if (signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());

    std::vector<std::array<Point, 3>> tris;
    std::vector<int> idx(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) idx[k] = static_cast<int>(k);
    int guard = 0;
    while (idx.size() > 3 && guard < 10000) {
        ++guard;
        bool clipped = false;
        const std::size_t n = idx.size();
        for (std::size_t k = 0; k < n; ++k) {
            const Point& a = poly[idx[(k + n - 1) % n]];
            const Point& b = poly[idx[k]];
            const Point& c = poly[idx[(k + 1) % n]];
            const double area = cross(b - a, c - b);
            if (area <= 1e-14 * (b - a).norm() * (c - b).norm()) {
                if (std::abs(area) <= 1e-14 * std::max(1.0, (c - a).squaredNorm())) {
                    idx.erase(idx.begin() + static_cast<long>(k));  // collinear or duplicate
                    clipped = true;
                    break;
                }
                continue;
            }
            bool inside = false;
            for (std::size_t m = 0; m < n && !inside; ++m) {
                if (m == k || m == (k + 1) % n || m == (k + n - 1) % n) continue;
                const Point& p = poly[idx[m]];
                inside = cross(b - a, p - a) > 0 && cross(c - b, p - b) > 0 && cross(a - c, p - c) > 0;
            }
            if (inside) continue;
            tris.push_back({a, b, c});
            idx.erase(idx.begin() + static_cast<long>(k));
            clipped = true;
            break;
        }
        if (!clipped) throw NumericalError("polygon triangulation failed");
    }
    if (idx.size() == 3) {
        const Point &a = poly[idx[0]], &b = poly[idx[1]], &c = poly[idx[2]];
        if (std::abs(cross(b - a, c - a)) > 0) tris.push_back({a, b, c});
    }
    return tris;
}

std::vector<Point> boundary_loop_from(const Rect& rect, const Point& start) {
    const double s = perimeter_coord(rect, start);
    std::vector<Point> loop{start};
    for (const auto& c : corners_between(rect, s, s + 4.0 - 1e-12)) {
        if ((c - start).norm() > 1e-14) loop.push_back(c);
    }
    return loop;
}

std::array<std::vector<Point>, 2> split_rect(const Rect& rect, const std::vector<Point>& path) {
    const Point e = path.front(), x = path.back();
    const double se = perimeter_coord(rect, e), sx = perimeter_coord(rect, x);
    std::vector<Point> p1{e}, p2{x};
    for (const auto& c : corners_between(rect, se, sx)) p1.push_back(c);
    for (auto it = path.rbegin(); it != path.rend(); ++it) p1.push_back(*it);
    p1.pop_back();
    for (const auto& c : corners_between(rect, sx, se)) p2.push_back(c);
    for (const auto& p : path) p2.push_back(p);
    p2.pop_back();
    return {p1, p2};
}

}  // namespace msf::xfem
