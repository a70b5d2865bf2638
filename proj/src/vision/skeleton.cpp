#include "msf/vision/skeleton.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace msf::vision {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// P2..P9 clockwise from north (north = +y).
constexpr int kNx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kNy[8] = {1, 1, 0, -1, -1, -1, 0, 1};

int neighbours8(const BinaryGrid& g, int x, int y) {
    int n = 0;
    for (int k = 0; k < 8; ++k) n += g.get(x + kNx[k], y + kNy[k]);
    return n;
}

bool adjacent8(const Pixel& a, const Pixel& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) == 1;
}

double step_length(const Pixel& a, const Pixel& b) { return (a.x != b.x && a.y != b.y) ? kSqrt2 : 1.0; }

double path_length(const std::vector<Pixel>& path) {
    double len = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) len += step_length(path[k - 1], path[k]);
    return len;
}

/// Drops pixels whose predecessor and successor already touch.
std::vector<Pixel> simplify(const std::vector<Pixel>& path) {
    std::vector<Pixel> out;
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (!out.empty() && out.back() == path[k]) continue;
        if (out.size() >= 1 && k + 1 < path.size() && adjacent8(out.back(), path[k + 1])) continue;
        out.push_back(path[k]);
    }
    return out;
}

struct Dijkstra {
    std::vector<double> dist;
    std::vector<int> prev;
    std::size_t farthest = 0;
};

Dijkstra geodesic(const BinaryGrid& g, std::size_t source) {
    Dijkstra d;
    d.dist.assign(g.pixel_count(), std::numeric_limits<double>::infinity());
    d.prev.assign(g.pixel_count(), -1);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    d.dist[source] = 0.0;
    heap.push({0.0, source});
    d.farthest = source;
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du > d.dist[u]) continue;
        // Ties resolve to the lowest index so the result is deterministic.
        if (du > d.dist[d.farthest] || (du == d.dist[d.farthest] && u < d.farthest)) d.farthest = u;
        const int ux = static_cast<int>(u % g.width), uy = static_cast<int>(u / g.width);
        for (int k = 0; k < 8; ++k) {
            const int vx = ux + kNx[k], vy = uy + kNy[k];
            if (!g.get(vx, vy)) continue;
            const std::size_t v = g.index(vx, vy);
            const double w = (kNx[k] != 0 && kNy[k] != 0) ? kSqrt2 : 1.0;
            if (du + w < d.dist[v]) {
                d.dist[v] = du + w;
                d.prev[v] = static_cast<int>(u);
                heap.push({d.dist[v], v});
            }
        }
    }
    return d;
}

void extend(std::vector<Pixel>& path, const BinaryGrid& foreground, bool at_back) {
    if (path.empty()) return;
    const std::size_t n = path.size();
    const Pixel end = at_back ? path[n - 1] : path[0];
    const std::size_t back = std::min<std::size_t>(5, n - 1);
    if (back == 0) return;
    const Pixel from = at_back ? path[n - 1 - back] : path[back];
    double dx = end.x - from.x, dy = end.y - from.y;
    const double len = std::hypot(dx, dy);
    if (len == 0) return;
    dx /= len;
    dy /= len;
    std::vector<Pixel> added;
    Pixel last = end;
    const int limit = 2 * (foreground.width + foreground.height);
    for (int s = 1; s < limit; ++s) {
        const double t = 0.5 * s;
        const Pixel q{static_cast<int>(std::floor(end.x + 0.5 + dx * t)), static_cast<int>(std::floor(end.y + 0.5 + dy * t))};
        if (q == last) continue;
        if (!foreground.get(q.x, q.y) || !adjacent8(q, last)) break;
        added.push_back(q);
        last = q;
    }
    if (at_back) {
        path.insert(path.end(), added.begin(), added.end());
    } else {
        std::reverse(added.begin(), added.end());
        path.insert(path.begin(), added.begin(), added.end());
    }
}

}  // namespace

BinaryGrid zhang_suen_thin(const BinaryGrid& grid) {
    BinaryGrid g = grid;
    std::vector<std::size_t> marked;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            marked.clear();
            for (int y = 0; y < g.height; ++y)
                for (int x = 0; x < g.width; ++x) {
                    if (!g.at(x, y)) continue;
                    int p[8];
                    int b = 0;
                    for (int k = 0; k < 8; ++k) {
                        p[k] = g.get(x + kNx[k], y + kNy[k]);
                        b += p[k];
                    }
                    if (b < 2 || b > 6) continue;
                    int a = 0;
                    for (int k = 0; k < 8; ++k) a += (p[k] == 0 && p[(k + 1) % 8] == 1);
                    if (a != 1) continue;
                    // p[0]=P2 (N), p[2]=P4 (E), p[4]=P6 (S), p[6]=P8 (W)
                    if (pass == 0) {
                        if (p[0] * p[2] * p[4] != 0 || p[2] * p[4] * p[6] != 0) continue;
                    } else {
                        if (p[0] * p[2] * p[6] != 0 || p[0] * p[4] * p[6] != 0) continue;
                    }
                    marked.push_back(g.index(x, y));
                }
            for (auto k : marked) g.cells[k] = 0;
            changed = changed || !marked.empty();
        }
    }
    return g;
}

void prune_spurs(BinaryGrid& skel, int length) {
    if (length <= 0) return;
    for (int round = 0; round < 10; ++round) {
        bool removed = false;
        for (int y = 0; y < skel.height; ++y)
            for (int x = 0; x < skel.width; ++x) {
                if (!skel.at(x, y) || neighbours8(skel, x, y) != 1) continue;
                std::vector<Pixel> branch{{x, y}};
                Pixel cur{x, y};
                bool hit_junction = false;
                while (static_cast<int>(branch.size()) <= length) {
                    std::vector<Pixel> next;
                    for (int k = 0; k < 8; ++k) {
                        const Pixel q{cur.x + kNx[k], cur.y + kNy[k]};
                        if (!skel.get(q.x, q.y)) continue;
                        if (std::find(branch.begin(), branch.end(), q) != branch.end()) continue;
                        next.push_back(q);
                    }
                    if (next.empty()) break;
                    if (next.size() > 1 || neighbours8(skel, next[0].x, next[0].y) >= 3) {
                        hit_junction = true;
                        break;
                    }
                    cur = next[0];
                    branch.push_back(cur);
                }
                if (hit_junction && static_cast<int>(branch.size()) < length) {
                    for (const auto& p : branch) skel.set(p.x, p.y, false);
                    removed = true;
                }
            }
        if (!removed) break;
    }
}

CrackSkeleton skeletonize(const BinaryGrid& grid, const SkeletonOptions& options) {
    MSF_REQUIRE(grid.cells.size() == grid.pixel_count(), "grid size does not match its dimensions");
    MSF_REQUIRE(!grid.empty(), "skeletonize needs a nonempty foreground");

    CrackSkeleton out;
    static_cast<GridFrame&>(out) = grid;
    BinaryGrid fg = grid;
    out.components = keep_largest_component(fg);
    if (out.components > 1) {
        out.warnings.push_back("foreground has " + std::to_string(out.components) +
                               " components; using the largest");
    }

    BinaryGrid thin = zhang_suen_thin(fg);
    if (thin.empty()) {
        // Thinning can erase tiny blobs; keep the pixel nearest their centroid.
        double cx = 0, cy = 0;
        std::size_t n = 0;
        for (int y = 0; y < fg.height; ++y)
            for (int x = 0; x < fg.width; ++x)
                if (fg.at(x, y)) { cx += x; cy += y; ++n; }
        cx /= static_cast<double>(n);
        cy /= static_cast<double>(n);
        Pixel best{-1, -1};
        double bd = std::numeric_limits<double>::max();
        for (int y = 0; y < fg.height; ++y)
            for (int x = 0; x < fg.width; ++x) {
                if (!fg.at(x, y)) continue;
                const double d = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                if (d < bd) { bd = d; best = {x, y}; }
            }
        thin.set(best.x, best.y, true);
    }
    prune_spurs(thin, options.prune_length);
    keep_largest_component(thin);

    std::size_t start = 0;
    while (!thin.cells[start]) ++start;
    const Dijkstra first = geodesic(thin, start);
    const Dijkstra second = geodesic(thin, first.farthest);
    std::vector<Pixel> path;
    for (int v = static_cast<int>(second.farthest); v != -1; v = second.prev[v]) {
        path.push_back({v % thin.width, v / thin.width});
    }
    if (options.extend_to_boundary) {
        extend(path, fg, false);
        extend(path, fg, true);
    }
    out.path = simplify(path);
    out.skeleton = BinaryGrid(grid, false);
    for (const auto& p : out.path) out.skeleton.set(p.x, p.y, true);
    out.length = path_length(out.path) * grid.scale;
    return out;
}

CrackMeasurement crack_length(const CrackSkeleton& sk, Edge mouth, int mouth_tolerance) {
    MSF_REQUIRE(!sk.path.empty(), "crack_length needs a nonempty skeleton");
    auto gap = [&](const Pixel& p) {
        switch (mouth) {
            case Edge::Left: return p.x + 0.5;
            case Edge::Right: return sk.width - p.x - 0.5;
            case Edge::Bottom: return p.y + 0.5;
            case Edge::Top: return sk.height - p.y - 0.5;
        }
        return 0.0;
    };
    const Pixel a = sk.path.front(), b = sk.path.back();
    const bool front_is_mouth = gap(a) <= gap(b);
    const Pixel m = front_is_mouth ? a : b;
    const Pixel tip = front_is_mouth ? b : a;
    if (gap(m) > mouth_tolerance + 0.5) {
        throw InvalidArgument("skeleton does not reach the " + edge_name(mouth) + " edge");
    }
    CrackMeasurement out;
    out.mouth = m;
    out.tip = tip;
    out.length = (path_length(sk.path) + gap(m) + 0.5) * sk.scale;
    out.tip_x = sk.centre_x(tip.x);
    out.tip_y = sk.centre_y(tip.y);
    return out;
}

}  // namespace msf::vision
