#include "msf/xfem/mesh.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace msf::xfem {

StructuredMesh::StructuredMesh(int nx, int ny, double width, double height)
    : nx_(nx), ny_(ny), width_(width), height_(height) {
    MSF_REQUIRE(nx > 0 && ny > 0, "mesh needs at least one element per direction");
    MSF_REQUIRE(width > 0 && height > 0, "mesh extent must be positive");
    hx_ = width / nx;
    hy_ = height / ny;
}

Point StructuredMesh::node_position(int n) const {
    const int i = n % (nx_ + 1), j = n / (nx_ + 1);
    return {i * hx_, j * hy_};
}

std::array<int, 4> StructuredMesh::element_nodes(int e) const {
    const int i = e % nx_, j = e / nx_;
    return {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
}

Rect StructuredMesh::element_rect(int e) const {
    const int i = e % nx_, j = e / nx_;
    return {i * hx_, j * hy_, (i + 1) * hx_, (j + 1) * hy_};
}

int StructuredMesh::locate(const Point& p) const {
    if (p.x() < 0 || p.y() < 0 || p.x() > width_ || p.y() > height_) return -1;
    const int i = std::min(nx_ - 1, static_cast<int>(std::floor(p.x() / hx_)));
    const int j = std::min(ny_ - 1, static_cast<int>(std::floor(p.y() / hy_)));
    return j * nx_ + i;
}

ShapeValues StructuredMesh::shape(int e, const Point& p) const {
    const Rect r = element_rect(e);
    const double xi = 2.0 * (p.x() - r.x0) / hx_ - 1.0;
    const double eta = 2.0 * (p.y() - r.y0) / hy_ - 1.0;
    static constexpr double sx[4] = {-1, 1, 1, -1};
    static constexpr double sy[4] = {-1, -1, 1, 1};
    ShapeValues s;
    for (int k = 0; k < 4; ++k) {
        s.n[k] = 0.25 * (1 + sx[k] * xi) * (1 + sy[k] * eta);
        s.grad[k] = {0.25 * sx[k] * (1 + sy[k] * eta) * 2.0 / hx_, 0.25 * sy[k] * (1 + sx[k] * xi) * 2.0 / hy_};
    }
    return s;
}

}  // namespace msf::xfem
