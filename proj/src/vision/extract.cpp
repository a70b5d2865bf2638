#include "msf/vision/extract.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msf::vision {

namespace {

void finish(CrackExtraction& out, const BinaryGrid& grid, const ExtractionOptions& options, double overshoot) {
    out.skeleton = skeletonize(grid, options.skeleton);
    out.measurement = crack_length(out.skeleton, options.mouth, options.mouth_tolerance);

    const auto& path = out.skeleton.path;
    const bool tip_at_back = path.back() == out.measurement.tip;
    const std::size_t n = path.size();
    const std::size_t back = std::min<std::size_t>(5, n - 1);
    if (back > 0) {
        const Pixel t = tip_at_back ? path[n - 1] : path[0];
        const Pixel f = tip_at_back ? path[n - 1 - back] : path[back];
        const double dx = t.x - f.x, dy = t.y - f.y, len = std::hypot(dx, dy);
        out.dir_x = dx / len;
        out.dir_y = dy / len;
    } else {
        switch (options.mouth) {
            case Edge::Left: out.dir_x = 1; out.dir_y = 0; break;
            case Edge::Right: out.dir_x = -1; out.dir_y = 0; break;
            case Edge::Bottom: out.dir_x = 0; out.dir_y = 1; break;
            case Edge::Top: out.dir_x = 0; out.dir_y = -1; break;
        }
    }
    out.length = std::max(0.0, out.measurement.length - overshoot);
    out.tip_x = out.measurement.tip_x - overshoot * out.dir_x;
    out.tip_y = out.measurement.tip_y - overshoot * out.dir_y;
}

}  // namespace

CrackExtraction extract_from_image(const ContourRaster& raster, const ExtractionOptions& options) {
    CrackExtraction out;
    out.raster = raster;
    const int threshold = options.otsu ? otsu_threshold(raster) : options.threshold;
    out.binary = binarize_median(raster, threshold, options.median_window);
    finish(out, out.binary, options, 0.0);
    return out;
}

CrackExtraction extract_from_atoms(const md::AtomSystem& snapshot, const ExtractionOptions& options) {
    MSF_REQUIRE(snapshot.size() > 0, "snapshot has no atoms");
    const double a = snapshot.lattice_constant;
    const double radius = options.splat_radius > 0 ? options.splat_radius : a;

    SurfaceOptions surface = options.surface;
    // Outer free surfaces stay in the image so that they seal the faces'
    // gap; the border strip is cleared after filling.
    surface.exclude_margin = false;
    CrackExtraction out;
    out.surface = surface_atoms(snapshot, surface);

    std::vector<Vec3> flagged;
    Bounds2 b{snapshot.box.lo.x, snapshot.box.lo.y, snapshot.box.hi.x, snapshot.box.hi.y};
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
        const Vec3& r = snapshot.positions[i];
        b.x_lo = std::min(b.x_lo, r.x);
        b.y_lo = std::min(b.y_lo, r.y);
        b.x_hi = std::max(b.x_hi, r.x);
        b.y_hi = std::max(b.y_hi, r.y);
        if (out.surface[i]) flagged.push_back(r);
    }
    if (flagged.empty()) throw InvalidArgument("no surface atoms found in the snapshot");
    const auto surface_mask = std::move(out.surface);
    out = extract_from_contour(rasterize(flagged, options.scale, radius, b), a, options);
    out.surface = surface_mask;
    return out;
}

CrackExtraction extract_from_contour(const ContourRaster& raster, double lattice_constant,
                                     const ExtractionOptions& options) {
    MSF_REQUIRE(lattice_constant > 0, "lattice constant must be positive");
    const double radius = options.splat_radius > 0 ? options.splat_radius : lattice_constant;
    CrackExtraction out;
    out.raster = raster;
    const int threshold = options.otsu ? otsu_threshold(out.raster) : options.threshold;
    out.binary = binarize_median(out.raster, threshold, options.median_window);
    std::vector<Edge> open;
    for (Edge e : {Edge::Left, Edge::Right, Edge::Bottom, Edge::Top}) {
        if (e != options.mouth) open.push_back(e);
    }
    const double scale = raster.scale;
    out.binary = close_gaps(out.binary,
                            static_cast<int>(std::ceil(options.closing_lattice_constants * lattice_constant / scale)));
    fill_enclosed(out.binary, open);
    clear_border(out.binary, static_cast<int>(std::ceil(options.border_lattice_constants * lattice_constant / scale)));
    if (out.binary.empty()) throw InvalidArgument("no crack foreground left after border clearing");
    finish(out, out.binary, options, radius);
    return out;
}

}  // namespace msf::vision
