/**
 * @file test_vision.cpp
 * @brief Crack extraction: coordination flags, rasterisation, binarisation,
 *        thinning, path length and image I/O.
 */
#include "msf/core/error.hpp"
#include "msf/md/lattice.hpp"
#include "msf/vision/extract.hpp"
#include "msf/vision/image_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace msf;
using namespace msf::vision;

namespace {

BinaryGrid blank(int w, int h, double scale = 1.0) {
    GridFrame f;
    f.width = w;
    f.height = h;
    f.scale = scale;
    return BinaryGrid(f);
}

void fill_rect(BinaryGrid& g, int x0, int y0, int x1, int y1) {
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) g.set(x, y, true);
}

/// Horizontal band from the left edge, `length` px long and `thickness` px tall.
BinaryGrid strip(int length, int thickness, double scale = 1.0) {
    auto g = blank(length + 40, thickness + 30, scale);
    fill_rect(g, 0, 15, length - 1, 15 + thickness - 1);
    return g;
}

/// Horizontal leg from the left edge, then a vertical leg upward.
BinaryGrid l_shape(int horizontal, int vertical, int thickness) {
    auto g = blank(horizontal + 30, vertical + 40, 1.0);
    const int y0 = 15;
    fill_rect(g, 0, y0, horizontal - 1, y0 + thickness - 1);
    fill_rect(g, horizontal - thickness, y0, horizontal - 1, y0 + vertical - 1);
    return g;
}

ContourRaster to_grey(const BinaryGrid& g, std::uint8_t on = 255, std::uint8_t off = 0) {
    ContourRaster r(static_cast<const GridFrame&>(g), off);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            if (g.at(x, y)) r.at(x, y) = on;
    return r;
}

bool same_cells(const BinaryGrid& a, const BinaryGrid& b) {
    return a.width == b.width && a.height == b.height && a.cells == b.cells;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(Coordination, BulkAtomWithTwoShellsIsNotFlagged) {
    const auto block = md::build_bcc_block(4, 4, 4, 2.85, true);
    const double cutoff = 1.2 * bcc_nearest_neighbor(2.85);
    const auto n = coordination_numbers(block, cutoff);
    for (int c : n) EXPECT_EQ(c, 14);
    const auto flags = coordination_filter(block, cutoff, 12);
    for (bool f : flags) EXPECT_FALSE(f);
}

TEST(Coordination, FreeFaceAtomsAreFlagged) {
    const auto slab = md::build_bcc_block(4, 4, 4, 2.85, false);
    const double cutoff = 1.1 * bcc_nearest_neighbor(2.85);
    const auto n = coordination_numbers(slab, cutoff);
    const auto flags = coordination_filter(slab, cutoff, 8);
    const auto hi = slab.box.hi;
    for (std::size_t i = 0; i < slab.size(); ++i) {
        const auto& r = slab.positions[i];
        bool on_face = false;
        for (int d = 0; d < 3; ++d) {
            if (!slab.box.periodic[d] && (r[d] < 0.1 || r[d] > hi[d] - 2.0)) on_face = true;
        }
        if (on_face) {
            EXPECT_LT(n[i], 8);
            EXPECT_TRUE(flags[i]);
        } else {
            EXPECT_EQ(n[i], 8);
        }
    }
}

TEST(Coordination, IsolatedAtomIsFlagged) {
    md::AtomSystem sys;
    sys.box.hi = {20, 20, 20};
    sys.add_atom({10, 10, 10}, md::Species::Fe, md::Group::Mobile);
    EXPECT_EQ(coordination_numbers(sys, 3.0)[0], 0);
    EXPECT_TRUE(coordination_filter(sys, 3.0, 1)[0]);
}

TEST(Rasterize, PointAtOriginSitsOnPixelCentre) {
    const auto r = rasterize({{0, 0, 0}, {10, 0, 0}}, 0.5, 1.0);
    int cx = -1, cy = -1;
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x)
            if (std::abs(r.centre_x(x)) < 1e-12 && std::abs(r.centre_y(y)) < 1e-12) cx = x, cy = y;
    ASSERT_GE(cx, 0);
    EXPECT_EQ(r.at(cx, cy), 255);
    EXPECT_EQ(r.at(0, 0), 0);
}

TEST(Rasterize, RejectsDegenerateInput) {
    EXPECT_THROW(rasterize({}, 1.0, 1.0), InvalidArgument);
    EXPECT_THROW(rasterize({{0, 0, 0}}, 0.0, 1.0), InvalidArgument);
    EXPECT_THROW(rasterize({{0, 0, 0}}, 1.0, -1.0), InvalidArgument);
}

TEST(Binarize, ThresholdExtremes) {
    GridFrame f;
    f.width = 8;
    f.height = 6;
    const ContourRaster zero(f, 0);
    EXPECT_TRUE(binarize_median(zero, 128, 3).empty());
    EXPECT_EQ(binarize(zero, 0).count(), f.pixel_count());
    EXPECT_THROW(binarize_median(zero, 128, 4), InvalidArgument);
}

TEST(Binarize, MedianRemovesSaltNoiseAndKeepsBand) {
    const auto clean = strip(100, 7);
    auto noisy = clean;
    const auto near_band = dilate(clean, 1);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> px(0, clean.width - 1), py(0, clean.height - 1);
    const std::size_t target = clean.pixel_count() / 100;
    std::size_t added = 0;
    while (added < target) {
        const int x = px(rng), y = py(rng);
        if (near_band.at(x, y) || noisy.at(x, y)) continue;
        bool isolated = true;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx)
                if ((dx || dy) && noisy.get(x + dx, y + dy)) isolated = false;
        if (!isolated) continue;
        noisy.set(x, y, true);
        ++added;
    }
    const auto filtered = binarize_median(to_grey(noisy), 128, 3);
    for (int y = 0; y < clean.height; ++y)
        for (int x = 0; x < clean.width; ++x) {
            if (!clean.at(x, y)) EXPECT_FALSE(filtered.at(x, y)) << x << ',' << y;
        }
    for (int y = 16; y <= 20; ++y)
        for (int x = 0; x < 99; ++x) EXPECT_TRUE(filtered.at(x, y)) << x << ',' << y;
}

TEST(Binarize, OtsuSeparatesTwoLevels) {
    const auto g = strip(60, 9);
    const int t = otsu_threshold(to_grey(g, 200, 40));
    EXPECT_GT(t, 40);
    EXPECT_LE(t, 200);
    EXPECT_TRUE(same_cells(binarize(to_grey(g, 200, 40), t), g));
}

TEST(Morphology, FillClosesGapBetweenFaces) {
    auto g = blank(60, 40);
    fill_rect(g, 0, 10, 39, 12);
    fill_rect(g, 0, 20, 39, 22);
    fill_rect(g, 38, 10, 40, 22);
    fill_enclosed(g, {Edge::Right, Edge::Top, Edge::Bottom});
    for (int y = 10; y <= 22; ++y)
        for (int x = 0; x <= 38; ++x) EXPECT_TRUE(g.at(x, y));
    EXPECT_FALSE(g.at(50, 16));
    EXPECT_FALSE(g.at(10, 30));
}

TEST(Morphology, ClosingBridgesSmallBreakWithoutGrowing) {
    auto g = strip(80, 5);
    const auto whole = g;
    for (int y = 15; y < 20; ++y) g.set(40, y, false), g.set(41, y, false);
    const auto closed = close_gaps(g, 1);
    EXPECT_TRUE(same_cells(closed, whole));
    EXPECT_TRUE(same_cells(close_gaps(whole, 2), whole));
}

TEST(Morphology, ClearBorderAndLargestComponent) {
    auto g = blank(30, 30);
    fill_rect(g, 0, 0, 29, 29);
    clear_border(g, 3);
    EXPECT_FALSE(g.at(2, 15));
    EXPECT_TRUE(g.at(3, 15));
    auto two = blank(30, 10);
    fill_rect(two, 0, 2, 5, 4);
    fill_rect(two, 10, 2, 25, 4);
    EXPECT_EQ(keep_largest_component(two), 2);
    EXPECT_FALSE(two.at(2, 3));
    EXPECT_TRUE(two.at(20, 3));
}

TEST(Skeleton, HorizontalStripLength) {
    const auto s = skeletonize(strip(100, 7));
    EXPECT_NEAR(s.length, 100.0, 2.0);
    const auto m = crack_length(s, Edge::Left);
    EXPECT_NEAR(m.length, 100.0, 2.0);
    EXPECT_NEAR(m.tip_y, 18.5, 1.0);
    EXPECT_NEAR(m.tip_x, 99.5, 2.0);
}

TEST(Skeleton, DiagonalStripLength) {
    auto g = blank(130, 130);
    for (int y = 0; y < 130; ++y)
        for (int x = 0; x < 100; ++x)
            if (std::abs(x - y) <= 3 && y < 100) g.set(x, y, true);
    const auto s = skeletonize(g);
    EXPECT_NEAR(s.length, 100.0 * std::numbers::sqrt2, 0.03 * 100.0 * std::numbers::sqrt2);
}

TEST(Skeleton, SingleBlobHasZeroLength) {
    auto g = blank(11, 11);
    fill_rect(g, 4, 4, 6, 6);
    const auto s = skeletonize(g);
    EXPECT_EQ(s.skeleton.count(), 1u);
    EXPECT_DOUBLE_EQ(s.length, 0.0);
}

TEST(Skeleton, LShapeLength) {
    const auto thin = skeletonize(l_shape(60, 30, 1));
    EXPECT_NEAR(crack_length(thin, Edge::Left).length, 90.0, 3.0);
    // A 5 px band has its medial axis half a thickness inside each leg.
    const auto m = crack_length(skeletonize(l_shape(60, 30, 5)), Edge::Left);
    EXPECT_NEAR(m.length, 85.0, 3.0);
    EXPECT_GT(m.tip_y, 40.0);
}

TEST(Skeleton, ThinningIsIdempotent) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coord(2, 45);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = blank(50, 50);
        for (int k = 0; k < 6; ++k) {
            const int x = coord(rng), y = coord(rng);
            fill_rect(g, x - 2, y - 2, std::min(x + 2, 49), std::min(y + 2, 49));
        }
        const auto once = zhang_suen_thin(g);
        EXPECT_TRUE(same_cells(zhang_suen_thin(once), once));
    }
    for (const auto& shape : {strip(100, 7), l_shape(60, 30, 5)}) {
        const auto s = skeletonize(shape);
        const auto again = skeletonize(s.skeleton);
        EXPECT_TRUE(same_cells(again.skeleton, s.skeleton));
        EXPECT_DOUBLE_EQ(again.length, s.length);
    }
}

TEST(Skeleton, DisconnectedForegroundWarnsAndKeepsLongest) {
    auto g = strip(100, 5);
    fill_rect(g, 120, 2, 125, 6);
    const auto s = skeletonize(g);
    EXPECT_EQ(s.components, 2);
    EXPECT_FALSE(s.warnings.empty());
    EXPECT_NEAR(s.length, 100.0, 2.0);
}

TEST(Skeleton, EmptyForegroundThrows) {
    EXPECT_THROW(skeletonize(blank(10, 10)), InvalidArgument);
}

TEST(Skeleton, MouthMustTouchSkeleton) {
    const auto s = skeletonize(strip(100, 7));
    EXPECT_THROW(crack_length(s, Edge::Top), InvalidArgument);
}

TEST(Skeleton, ScaleEquivariance) {
    ExtractionOptions coarse, fine;
    fine.scale = 0.5;
    const auto a = extract_from_image(to_grey(strip(100, 8, 1.0)), coarse);
    const auto b = extract_from_image(to_grey(strip(200, 16, 0.5)), fine);
    EXPECT_NEAR(b.length / a.length, 1.0, 0.03);
}

TEST(Skeleton, NestedForegroundsAreOrdered) {
    for (int shorter : {30, 60, 90}) {
        const auto a = extract_from_image(to_grey(strip(shorter, 7)));
        const auto b = extract_from_image(to_grey(strip(100, 7)));
        EXPECT_LE(a.length, b.length + 2.0);
    }
}

TEST(ImageIo, PgmAndPngRoundTrip) {
    auto g = l_shape(40, 20, 4);
    auto grey = to_grey(g, 210, 17);
    grey.at(3, 3) = 99;
    for (const std::string name : {"msf_vision.pgm", "msf_vision.png"}) {
        const auto path = temp_file(name).string();
        write_image(path, grey, "cycle 3");
        const auto back = read_image(path, 0.25);
        EXPECT_EQ(back.width, grey.width);
        EXPECT_EQ(back.height, grey.height);
        EXPECT_EQ(back.intensity, grey.intensity);
        EXPECT_DOUBLE_EQ(back.scale, 0.25);
    }
    std::ifstream pgm(temp_file("msf_vision.pgm"));
    std::string magic, comment;
    std::getline(pgm, magic);
    std::getline(pgm, comment);
    EXPECT_EQ(magic, "P5");
    EXPECT_NE(comment.find("cycle 3"), std::string::npos);
}

TEST(ImageIo, ReadsAsciiPgmWithTopRowFirst) {
    const auto path = temp_file("msf_ascii.pgm");
    std::ofstream(path) << "P2\n# two rows\n3 2\n255\n1 2 3\n4 5 6\n";
    const auto r = read_image(path.string());
    EXPECT_EQ(r.at(0, 1), 1);
    EXPECT_EQ(r.at(2, 0), 6);
    EXPECT_THROW(read_image(temp_file("msf_missing.pgm").string()), Error);
}

TEST(ImageIo, OverlayIsWritten) {
    const auto grey = to_grey(strip(50, 5));
    const auto s = skeletonize(binarize(grey, 128));
    const auto path = temp_file("msf_overlay.png");
    write_overlay_png(path.string(), grey, s);
    EXPECT_GT(std::filesystem::file_size(path), 0u);
}

TEST(AtomisticFrame, InitialCrackLength) {
    md::RveSpec spec;
    spec.box = {120, 120, 8.55};
    spec.crack.length = 40;
    const auto sys = md::build_rve(spec);
    const auto ex = extract_from_atoms(sys);
    EXPECT_NEAR(ex.length, 40.0, 2.0);
    EXPECT_NEAR(ex.tip_y, md::crack_plane_y(spec), 2.0);
    EXPECT_NEAR(ex.dir_x, 1.0, 0.05);
}

TEST(AtomisticFrame, UnchangedFrameGivesZeroGrowth) {
    md::RveSpec spec;
    spec.box = {80, 80, 8.55};
    spec.crack.length = 36;
    auto sys = md::build_rve(spec);
    const auto first = extract_from_atoms(sys);
    for (auto& r : sys.positions) r.z += 0.02;
    const auto second = extract_from_atoms(sys);
    EXPECT_NEAR(second.length - first.length, 0.0, 2.0);
}

TEST(AtomisticFrame, SharpAndBluntCracksBothMeasured) {
    md::RveSpec spec;
    spec.box = {120, 120, 8.55};
    spec.crack.length = 40;
    spec.crack.type = md::CrackType::Sharp;
    const auto ex = extract_from_atoms(md::build_rve(spec));
    EXPECT_NEAR(ex.length, 40.0, 2.0);
}

TEST(AtomisticFrame, ContourImagePathMatchesDirectPath) {
    md::RveSpec spec;
    spec.box = {80, 80, 8.55};
    spec.crack.length = 36;
    const auto sys = md::build_rve(spec);
    const auto direct = extract_from_atoms(sys);
    const auto path = temp_file("msf_frame.pgm");
    write_pgm(path.string(), direct.raster);
    auto back = read_image(path.string(), direct.raster.scale);
    back.origin_x = direct.raster.origin_x;
    back.origin_y = direct.raster.origin_y;
    const auto again = extract_from_contour(back, sys.lattice_constant);
    EXPECT_DOUBLE_EQ(again.length, direct.length);
    EXPECT_DOUBLE_EQ(again.tip_x, direct.tip_x);
}
