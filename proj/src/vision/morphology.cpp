#include "msf/vision/morphology.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace msf::vision {

Edge parse_edge(const std::string& name) {
    if (name == "left") return Edge::Left;
    if (name == "right") return Edge::Right;
    if (name == "bottom") return Edge::Bottom;
    if (name == "top") return Edge::Top;
    throw InvalidArgument("unknown edge '" + name + "' (expected left, right, bottom or top)");
}

std::string edge_name(Edge e) {
    switch (e) {
        case Edge::Left: return "left";
        case Edge::Right: return "right";
        case Edge::Bottom: return "bottom";
        case Edge::Top: return "top";
    }
    return "left";
}

BinaryGrid binarize(const ContourRaster& raster, int threshold) {
    raster.validate();
    BinaryGrid out(raster, false);
    for (std::size_t k = 0; k < raster.intensity.size(); ++k) out.cells[k] = raster.intensity[k] >= threshold ? 1 : 0;
    return out;
}

BinaryGrid median_filter(const BinaryGrid& grid, int window) {
    MSF_REQUIRE(window >= 3 && window % 2 == 1, "median window must be odd and at least 3");
    const int h = window / 2;
    const int majority = (window * window) / 2 + 1;
    BinaryGrid out(grid, false);
    // Column sums over the window height, then a sliding sum along x.
    std::vector<int> column(grid.width);
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            int s = 0;
            for (int dy = -h; dy <= h; ++dy) s += grid.at(x, std::clamp(y + dy, 0, grid.height - 1));
            column[x] = s;
        }
        for (int x = 0; x < grid.width; ++x) {
            int s = 0;
            for (int dx = -h; dx <= h; ++dx) s += column[std::clamp(x + dx, 0, grid.width - 1)];
            out.set(x, y, s >= majority);
        }
    }
    return out;
}

BinaryGrid binarize_median(const ContourRaster& raster, int threshold, int window) {
    MSF_REQUIRE(window >= 3 && window % 2 == 1, "median window must be odd and at least 3");
    return median_filter(binarize(raster, threshold), window);
}

int otsu_threshold(const ContourRaster& raster) {
    raster.validate();
    std::array<double, 256> hist{};
    for (auto v : raster.intensity) hist[v] += 1.0;
    const double total = static_cast<double>(raster.intensity.size());
    double sum_all = 0.0;
    for (int t = 0; t < 256; ++t) sum_all += t * hist[t];
    double w0 = 0.0, sum0 = 0.0, best = -1.0;
    int best_t = 128;
    // Class 0 holds intensities below t.
    for (int t = 1; t < 256; ++t) {
        w0 += hist[t - 1];
        sum0 += (t - 1) * hist[t - 1];
        const double w1 = total - w0;
        if (w0 == 0 || w1 == 0) continue;
        const double m0 = sum0 / w0, m1 = (sum_all - sum0) / w1;
        const double between = w0 * w1 * (m0 - m1) * (m0 - m1);
        if (between > best) {
            best = between;
            best_t = t;
        }
    }
    return best_t;
}

std::vector<int> label_components(const BinaryGrid& grid, int& count) {
    std::vector<int> label(grid.pixel_count(), 0);
    count = 0;
    std::vector<Pixel> stack;
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x) {
            if (!grid.at(x, y) || label[grid.index(x, y)] != 0) continue;
            ++count;
            label[grid.index(x, y)] = count;
            stack.push_back({x, y});
            while (!stack.empty()) {
                const Pixel p = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = p.x + dx, ny = p.y + dy;
                        if (!grid.get(nx, ny)) continue;
                        int& l = label[grid.index(nx, ny)];
                        if (l != 0) continue;
                        l = count;
                        stack.push_back({nx, ny});
                    }
            }
        }
    return label;
}

int keep_largest_component(BinaryGrid& grid) {
    int count = 0;
    const auto label = label_components(grid, count);
    if (count <= 1) return count;
    std::vector<std::size_t> size(count + 1, 0);
    for (int l : label) ++size[l];
    int best = 1;
    for (int l = 2; l <= count; ++l) {
        if (size[l] > size[best]) best = l;
    }
    for (std::size_t k = 0; k < label.size(); ++k) grid.cells[k] = label[k] == best ? 1 : 0;
    return count;
}

namespace {

// Separable square max (dilate) or min (erode) filter; out-of-grid pixels
// take the value `outside`.
BinaryGrid square_filter(const BinaryGrid& grid, int radius, bool take_max, bool outside) {
    MSF_REQUIRE(radius >= 0, "filter radius must be non-negative");
    if (radius == 0) return grid;
    const bool hit = take_max;
    BinaryGrid rows(static_cast<const GridFrame&>(grid));
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            bool v = !hit;
            for (int d = -radius; d <= radius && v != hit; ++d) {
                const int xx = x + d;
                const bool s = grid.inside(xx, y) ? grid.at(xx, y) : outside;
                if (s == hit) v = hit;
            }
            rows.set(x, y, v);
        }
    }
    BinaryGrid out(static_cast<const GridFrame&>(grid));
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            bool v = !hit;
            for (int d = -radius; d <= radius && v != hit; ++d) {
                const int yy = y + d;
                const bool s = rows.inside(x, yy) ? rows.at(x, yy) : outside;
                if (s == hit) v = hit;
            }
            out.set(x, y, v);
        }
    }
    return out;
}

}  // namespace

BinaryGrid dilate(const BinaryGrid& grid, int radius) { return square_filter(grid, radius, true, false); }

BinaryGrid erode(const BinaryGrid& grid, int radius) { return square_filter(grid, radius, false, true); }

BinaryGrid close_gaps(const BinaryGrid& grid, int radius) { return erode(dilate(grid, radius), radius); }

void fill_enclosed(BinaryGrid& grid, const std::vector<Edge>& open) {
    std::vector<std::uint8_t> reached(grid.pixel_count(), 0);
    std::deque<Pixel> queue;
    auto seed = [&](int x, int y) {
        if (grid.at(x, y) || reached[grid.index(x, y)]) return;
        reached[grid.index(x, y)] = 1;
        queue.push_back({x, y});
    };
    for (Edge e : open) {
        switch (e) {
            case Edge::Left: for (int y = 0; y < grid.height; ++y) seed(0, y); break;
            case Edge::Right: for (int y = 0; y < grid.height; ++y) seed(grid.width - 1, y); break;
            case Edge::Bottom: for (int x = 0; x < grid.width; ++x) seed(x, 0); break;
            case Edge::Top: for (int x = 0; x < grid.width; ++x) seed(x, grid.height - 1); break;
        }
    }
    constexpr int dx[4] = {1, -1, 0, 0};
    constexpr int dy[4] = {0, 0, 1, -1};
    while (!queue.empty()) {
        const Pixel p = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
            const int nx = p.x + dx[k], ny = p.y + dy[k];
            if (grid.inside(nx, ny)) seed(nx, ny);
        }
    }
    for (std::size_t k = 0; k < reached.size(); ++k) {
        if (!reached[k]) grid.cells[k] = 1;
    }
}

void clear_border(BinaryGrid& grid, int margin) {
    if (margin <= 0) return;
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x) {
            if (x < margin || y < margin || x >= grid.width - margin || y >= grid.height - margin) grid.set(x, y, false);
        }
}

}  // namespace msf::vision
