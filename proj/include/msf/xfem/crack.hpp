/**
 * @file crack.hpp
 * @brief Crack as an explicit polyline, with side tests and element cuts.
 *
 * An edge crack runs from its mouth on the plate boundary (first vertex)
 * to a single tip (last vertex). A center crack has a tip at both ends.
 */
#pragma once

#include "msf/xfem/mesh.hpp"

#include <vector>

namespace msf::xfem {

struct CrackTip {
    Point position;
    Point direction;  ///< unit vector pointing forward, along the last segment
    int end = 1;      ///< 1 = last vertex, 0 = first vertex
};

class CrackPolyline {
public:
    CrackPolyline() = default;
    CrackPolyline(std::vector<Point> vertices, bool front_is_tip);

    static CrackPolyline edge(double length, double y, double x_mouth = 0.0);
    static CrackPolyline center(const Point& mid, double length);

    const std::vector<Point>& vertices() const { return vertices_; }
    bool front_is_tip() const { return front_is_tip_; }
    std::vector<CrackTip> tips() const;
    double length() const;
    const std::vector<double>& kinks() const { return kinks_; }

    /// +1 on the left of the direction of travel (above a crack running
    /// in +x), -1 on the right.
    double side(const Point& p) const;

    /// Appends a vertex at the given tip; `kink` is the turn in radians.
    void extend(int end, const Point& new_tip, double kink);
    /// Moves a tip (not adding a vertex), e.g. to leave a grid line.
    void move_tip(int end, const Point& p);

    /// Throws InvalidArgument if a segment is degenerate or two
    /// non-adjacent segments intersect.
    void validate() const;

private:
    std::vector<Point> vertices_;
    bool front_is_tip_ = false;
    std::vector<double> kinks_;
};

struct ElementCut {
    enum class Kind { None, Cut, Tip };
    Kind kind = Kind::None;
    /// Cut: entry to exit, both on the element boundary. Tip: boundary
    /// entry to the tip.
    std::vector<Point> path;
    int tip_end = -1;
};

/// Throws NumericalError when the crack enters the element more than once
/// or two tips share an element.
ElementCut cut_element(const CrackPolyline& crack, const Rect& rect);

/// Triangulates a simple polygon (any orientation) by ear clipping.
std::vector<std::array<Point, 3>> triangulate(std::vector<Point> polygon);

/// The two sub-polygons a boundary-to-boundary path splits a rectangle into.
std::array<std::vector<Point>, 2> split_rect(const Rect& rect, const std::vector<Point>& path);

/// Rectangle boundary counter-clockwise from `start` (on the boundary)
/// back to it, corners included, `start` listed once.
std::vector<Point> boundary_loop_from(const Rect& rect, const Point& start);

}  // namespace msf::xfem
