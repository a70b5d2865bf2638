/**
 * @file mesh.hpp
 * @brief Structured grid of bilinear quadrilaterals over a rectangle.
 */
#pragma once

#include <Eigen/Dense>

#include <array>

namespace msf::xfem {

using Point = Eigen::Vector2d;

struct Rect {
    double x0, y0, x1, y1;
    bool contains(const Point& p) const { return p.x() > x0 && p.x() < x1 && p.y() > y0 && p.y() < y1; }
};

/// Values and global gradients of the four nodal shape functions.
struct ShapeValues {
    std::array<double, 4> n{};
    std::array<Point, 4> grad{};
};

class StructuredMesh {
public:
    /// nx x ny elements over [0, width] x [0, height], origin bottom-left.
    StructuredMesh(int nx, int ny, double width, double height);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double width() const { return width_; }
    double height() const { return height_; }
    int node_count() const { return (nx_ + 1) * (ny_ + 1); }
    int element_count() const { return nx_ * ny_; }

    int node(int i, int j) const { return j * (nx_ + 1) + i; }
    Point node_position(int n) const;
    /// Counter-clockwise from the bottom-left corner.
    std::array<int, 4> element_nodes(int e) const;
    Rect element_rect(int e) const;
    /// Element containing p (closed on the low side), or -1 outside.
    int locate(const Point& p) const;
    ShapeValues shape(int e, const Point& p) const;

private:
    int nx_, ny_;
    double width_, height_, hx_, hy_;
};

}  // namespace msf::xfem
