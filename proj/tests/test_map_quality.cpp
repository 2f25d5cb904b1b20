#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mrexplore/map_quality.hpp"
#include "oracles.hpp"

using namespace mrexplore;

namespace {

GrayImage image(int w, int h, std::uint8_t fill)
{
    return GrayImage{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w * h), fill)};
}

} // namespace

TEST(MapQuality, RenderingUsesFixedGrayLevels)
{
    OccupancyGrid g(GridFrame{1.0, 0.0, 0.0, 3, 1});
    g.set_state(Cell{1, 0}, CellState::Free);
    g.set_state(Cell{2, 0}, CellState::Occupied);
    const GrayImage img = render_grayscale(g);
    EXPECT_EQ(img.at(0, 0), kPixelUnknown);
    EXPECT_EQ(img.at(1, 0), kPixelFree);
    EXPECT_EQ(img.at(2, 0), kPixelOccupied);
}

TEST(MapQuality, IdentityGivesPerfectScores)
{
    oracle::Gen gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        GroundTruthMap t(GridFrame{0.1, 0.0, 0.0, gen.integer(3, 40), gen.integer(3, 40)});
        for (std::size_t i = 0; i < t.frame().cell_count(); ++i)
            if (gen.chance(0.3))
                t.set_occupied(t.frame().cell_at(i), true);
        const MapQuality q = map_quality(t.to_grid(), t);
        EXPECT_NEAR(q.ssim, 1.0, 1e-9);
        EXPECT_EQ(q.rmse, 0.0);
        EXPECT_EQ(q.alignment_error, 0.0);
    }
}

TEST(MapQuality, SsimIsSymmetricAndBounded)
{
    oracle::Gen gen(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int w = gen.integer(2, 20), h = gen.integer(2, 20);
        GrayImage a = image(w, h, 0), b = image(w, h, 0);
        for (auto& p : a.pixels)
            p = static_cast<std::uint8_t>(gen.integer(0, 255));
        for (auto& p : b.pixels)
            p = static_cast<std::uint8_t>(gen.integer(0, 255));
        const double s = ssim(a, b);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 1.0);
        EXPECT_NEAR(s, ssim(b, a), 1e-12);
    }
}

TEST(MapQuality, SsimOfConstantImagesMatchesFormula)
{
    /* Single 7x7 window, zero variance: SSIM reduces to the luminance term */
    const GrayImage a = image(7, 7, 100), b = image(7, 7, 200);
    const double c1 = std::pow(0.01 * 255.0, 2);
    const double expected = (2.0 * 100 * 200 + c1) / (100.0 * 100 + 200.0 * 200 + c1);
    EXPECT_NEAR(ssim(a, b), expected, 1e-12);
}

TEST(MapQuality, RmseKnownValue)
{
    GrayImage a = image(2, 2, 0), b = image(2, 2, 0);
    b.pixels = {0, 0, 255, 255};
    EXPECT_NEAR(rmse(a, b), std::sqrt(255.0 * 255.0 / 2.0), 1e-12);
    EXPECT_THROW(rmse(a, image(3, 2, 0)), std::invalid_argument);
}

TEST(MapQuality, AlignmentErrorMeasuresDistanceToReferenceObstacles)
{
    GrayImage ref = image(10, 10, kPixelFree), est = image(10, 10, kPixelFree);
    ref.pixels[2 + 2 * 10] = kPixelOccupied;
    est.pixels[5 + 6 * 10] = kPixelOccupied; // offset (3, 4) -> distance 5
    est.pixels[2 + 2 * 10] = kPixelOccupied; // exact match -> 0
    EXPECT_NEAR(alignment_error(est, ref), 2.5, 1e-12);
    EXPECT_EQ(alignment_error(ref, ref), 0.0);
    EXPECT_EQ(alignment_error(image(10, 10, kPixelFree), ref), 0.0);
    EXPECT_EQ(alignment_error(est, image(10, 10, kPixelFree)),
              std::numeric_limits<double>::infinity());
}

TEST(MapQuality, AlignmentErrorMatchesBruteForce)
{
    oracle::Gen gen(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = gen.integer(1, 15), h = gen.integer(1, 15);
        GrayImage ref = image(w, h, kPixelFree), est = image(w, h, kPixelFree);
        for (auto& p : ref.pixels)
            p = gen.chance(0.15) ? kPixelOccupied : kPixelFree;
        for (auto& p : est.pixels)
            p = gen.chance(0.15) ? kPixelOccupied : kPixelUnknown;
        ref.pixels[0] = kPixelOccupied;
        double sum = 0.0;
        int n = 0;
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                if (est.at(c, r) != kPixelOccupied)
                    continue;
                double best = std::numeric_limits<double>::infinity();
                for (int rr = 0; rr < h; ++rr)
                    for (int cc = 0; cc < w; ++cc)
                        if (ref.at(cc, rr) == kPixelOccupied)
                            best = std::min(best, std::hypot(c - cc, r - rr));
                sum += best;
                ++n;
            }
        }
        EXPECT_NEAR(alignment_error(est, ref), n ? sum / n : 0.0, 1e-9);
    }
}
