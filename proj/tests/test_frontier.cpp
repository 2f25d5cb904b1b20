#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mrexplore/frontier.hpp"
#include "oracles.hpp"

using namespace mrexplore;

namespace {

GridFrame frame(int w, int h, double res = 1.0)
{
    return GridFrame{res, 0.0, 0.0, w, h};
}

std::set<Cell> cells_of(const std::vector<FrontierPoint>& pts, const GridFrame& f)
{
    std::set<Cell> out;
    for (const auto& p : pts)
        out.insert(world_to_grid(p.position(), f));
    return out;
}

FrontierPoint at(Cell c, const GridFrame& f, AgentId agent = 0)
{
    const Point2 p = grid_to_world(c, f);
    return {p.x, p.y, agent};
}

} // namespace

TEST(Frontier, FullyKnownOrUnknownGridHasNoFrontiers)
{
    EXPECT_TRUE(detect_frontiers(OccupancyGrid(frame(8, 8), {}, CellState::Free)).empty());
    EXPECT_TRUE(detect_frontiers(OccupancyGrid(frame(8, 8))).empty());
}

TEST(Frontier, StraightBoundaryIsOneClusterOnTheBoundaryColumn)
{
    OccupancyGrid g(frame(10, 9));
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 5; ++c)
            g.set_state(Cell{c, r}, CellState::Free);
    const auto pts = detect_frontiers(g, 3);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(world_to_grid(pts[0].position(), g.frame()), (Cell{4, 4}));
    EXPECT_EQ(pts[0].source_agent, 3u);
}

TEST(Frontier, TwoSeparatedGapsGiveTwoPoints)
{
    /* Free room closed by a wall column with two 1-cell openings */
    OccupancyGrid g(frame(12, 9));
    for (int r = 0; r < 9; ++r) {
        for (int c = 0; c < 6; ++c)
            g.set_state(Cell{c, r}, CellState::Free);
        g.set_state(Cell{6, r}, CellState::Occupied);
    }
    g.set_state(Cell{6, 2}, CellState::Free);
    g.set_state(Cell{6, 6}, CellState::Free);
    const auto pts = detect_frontiers(g);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(world_to_grid(pts[0].position(), g.frame()), (Cell{6, 2}));
    EXPECT_EQ(world_to_grid(pts[1].position(), g.frame()), (Cell{6, 6}));
}

TEST(Frontier, DetectedPointsAreFreeCellsNextToUnknown)
{
    oracle::Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::random_grid(gen, gen.integer(1, 14), gen.integer(1, 14), 0.2, 0.4);
        for (const auto& p : detect_frontiers(g)) {
            const Cell c = world_to_grid(p.position(), g.frame());
            ASSERT_TRUE(g.contains(c));
            EXPECT_EQ(g.state(c), CellState::Free);
            bool touches = false;
            for (const Cell n : {Cell{c.col + 1, c.row}, Cell{c.col - 1, c.row},
                                 Cell{c.col, c.row + 1}, Cell{c.col, c.row - 1}})
                touches = touches || (g.contains(n) && g.state(n) == CellState::Unknown);
            EXPECT_TRUE(touches);
        }
    }
}

TEST(Frontier, NearBorderExtremes)
{
    const OccupancyGrid unknown(frame(10, 10));
    const OccupancyGrid known(frame(10, 10), {}, CellState::Free);
    const FrontierPoint p{5.5, 5.5, 0};
    EXPECT_TRUE(is_near_border(p, unknown, 1.0, 60.0));
    EXPECT_FALSE(is_near_border(p, known, 1.0, 60.0));
    EXPECT_FALSE(is_near_border({-50.0, -50.0, 0}, unknown, 1.0, 0.0));
    EXPECT_LT(unknown_percentage({-50.0, -50.0}, unknown, 1.0), 0.0);
}

TEST(Frontier, DiscOfTwentyOneCellsWithThirteenUnknown)
{
    /* Radius 2.3 cells: offsets with i^2 + j^2 <= 5.29, i.e. 21 cells */
    OccupancyGrid g(frame(9, 9), {}, CellState::Free);
    std::vector<Cell> disc;
    for (int j = -2; j <= 2; ++j)
        for (int i = -2; i <= 2; ++i)
            if (i * i + j * j <= 5)
                disc.push_back({4 + i, 4 + j});
    ASSERT_EQ(disc.size(), 21u);
    for (int k = 0; k < 13; ++k)
        g.set_state(disc[k], CellState::Unknown);
    const FrontierPoint p{4.5, 4.5, 0};
    EXPECT_NEAR(unknown_percentage(p.position(), g, 2.3), 100.0 * 13 / 21, 1e-12);
    EXPECT_TRUE(is_near_border(p, g, 2.3, 60.0));
    g.set_state(disc[12], CellState::Free);
    EXPECT_FALSE(is_near_border(p, g, 2.3, 60.0));
}

TEST(Frontier, NearBorderIsMonotoneInThreshold)
{
    oracle::Gen gen(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = oracle::random_grid(gen, 12, 12, 0.1, gen.real(0.0, 1.0), 0.25);
        const FrontierPoint p = oracle::random_points(gen, g.frame(), 1)[0];
        const double rad = gen.real(0.2, 1.5);
        const double t = gen.real(0.0, 100.0);
        if (is_near_border(p, g, rad, t))
            EXPECT_TRUE(is_near_border(p, g, rad, gen.real(0.0, t)));
    }
}

TEST(Frontier, MergeDeduplicatesAndFilters)
{
    OccupancyGrid g(frame(20, 10), {}, CellState::Free);
    for (int r = 0; r < 10; ++r)
        for (int c = 10; c < 20; ++c)
            g.set_state(Cell{c, r}, CellState::Unknown);
    const GridFrame& f = g.frame();
    const FrontierPoint border = at({10, 5}, f, 0);
    const FrontierPoint interior = at({2, 5}, f, 1);
    const std::vector<std::vector<FrontierPoint>> lists{{border, interior}, {border}};
    FilterParams params;
    params.per_unk = 40.0;
    const auto out = merge_points(lists, g, params);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0], border);
    EXPECT_TRUE(merge_points(std::vector<std::vector<FrontierPoint>>{{}, {}}, g, params).empty());
}

TEST(Frontier, MergeOutputIsDuplicateFreeSubsetInInputOrder)
{
    oracle::Gen gen(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = oracle::random_grid(gen, 10, 10, 0.1, 0.5, 0.5);
        std::vector<std::vector<FrontierPoint>> lists(3);
        for (auto& l : lists)
            l = oracle::random_points(gen, g.frame(), gen.integer(0, 12));
        FilterParams params;
        params.per_unk = gen.real(0.0, 100.0);
        const auto out = merge_points(lists, g, params);
        const auto flat = concatenate(lists);
        const auto out_cells = cells_of(out, g.frame());
        EXPECT_EQ(out_cells.size(), out.size());
        std::size_t pos = 0;
        for (const auto& p : out) {
            const auto it = std::find(flat.begin() + static_cast<long>(pos), flat.end(), p);
            ASSERT_NE(it, flat.end());
            pos = static_cast<std::size_t>(it - flat.begin()) + 1;
            EXPECT_TRUE(is_near_border(p, g, params.rad, params.per_unk));
        }
    }
}

TEST(Frontier, LargerRadiusOverKnownAnnulusNeverAddsPoints)
{
    oracle::Gen gen(77);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const auto g = oracle::random_grid(gen, 14, 14, 0.1, 0.3, 1.0);
        const FrontierPoint p = oracle::random_points(gen, g.frame(), 1)[0];
        const double rad = gen.real(1.0, 3.0);
        const double bigger = rad + 0.25 * gen.integer(1, 4);
        const Cell c = world_to_grid(p.position(), g.frame());
        bool annulus_known = true;
        for (int j = -5; j <= 5; ++j) {
            for (int i = -5; i <= 5; ++i) {
                const double d2 = i * i + j * j;
                const Cell q{c.col + i, c.row + j};
                if (d2 > rad * rad && d2 <= bigger * bigger && g.contains(q) &&
                    g.state(q) == CellState::Unknown)
                    annulus_known = false;
            }
        }
        if (!annulus_known)
            continue;
        ++checked;
        const std::vector<FrontierPoint> one{p};
        const auto small = filter_border_points(one, g, rad, 50.0);
        const auto large = filter_border_points(one, g, bigger, 50.0);
        EXPECT_LE(large.size(), small.size());
    }
    EXPECT_GT(checked, 20);
}

TEST(Frontier, ListBoundsLeavesInBoundsListUnchanged)
{
    OccupancyGrid g(frame(20, 20));
    std::vector<FrontierPoint> pts;
    for (int i = 0; i < 5; ++i)
        pts.push_back(at({i * 3, 2}, g.frame()));
    const BoundedList out = enforce_list_bounds(pts, pts, g, {});
    EXPECT_EQ(out.points.size(), 5u);
    EXPECT_EQ(out.final_rad, 1.0);
    EXPECT_EQ(out.final_perc, 60.0);
    EXPECT_EQ(out.iterations, 0);
    EXPECT_FALSE(out.exhausted);
}

TEST(Frontier, OversizedListIsRefilteredWithLargerRadius)
{
    /* Fifteen points along a tight known/unknown border: at radius 1 each
     * disc is more than 60% unknown, at 1.25 the known side catches up */
    OccupancyGrid g(frame(40, 20, 0.25));
    for (int c = 0; c < 40; ++c)
        for (int r = 0; r < 10; ++r)
            g.set_state(Cell{c, r}, CellState::Free);
    std::vector<FrontierPoint> pts;
    for (int i = 0; i < 15; ++i)
        pts.push_back(at({2 + 2 * i, 11}, g.frame()));
    const auto uni = filter_border_points(pts, g, 1.0, 60.0);
    ASSERT_EQ(uni.size(), 15u);
    const BoundedList out = enforce_list_bounds(uni, pts, g, {});
    EXPECT_GE(out.iterations, 1);
    EXPECT_GE(out.final_rad, 1.25);
    EXPECT_LT(out.points.size(), 15u);
}

TEST(Frontier, UndersizedListLowersThresholdStepwise)
{
    /* Discs of radius 3 around these points are about 38-39% unknown:
     * thresholds 60, 50 and 40 reject every point, 30 admits all of them */
    OccupancyGrid g(frame(20, 20), {}, CellState::Free);
    for (int c = 0; c < 20; ++c)
        for (int r = 12; r < 20; ++r)
            g.set_state(Cell{c, r}, CellState::Unknown);
    std::vector<FrontierPoint> raw;
    for (int c = 2; c < 18; c += 4)
        raw.push_back(at({c, 11}, g.frame()));
    FilterParams params;
    params.rad = 3.0;
    params.min_pts = 2;
    const double perc = unknown_percentage(raw[0].position(), g, params.rad);
    ASSERT_GT(perc, 30.0);
    ASSERT_LT(perc, 50.0);
    const auto uni = filter_border_points(raw, g, params.rad, params.per_unk);
    ASSERT_TRUE(uni.empty());
    const BoundedList out = enforce_list_bounds(uni, raw, g, params);
    EXPECT_FALSE(out.exhausted);
    EXPECT_EQ(out.points.size(), raw.size());
    EXPECT_LE(out.final_perc, perc);
    EXPECT_GT(out.final_perc, perc - params.perc_step);
    EXPECT_EQ(out.iterations, static_cast<int>((60.0 - out.final_perc) / 10.0 + 0.5));
}

TEST(Frontier, FullyExploredMapExhaustsTheThresholdClamp)
{
    const OccupancyGrid g(frame(10, 10), {}, CellState::Free);
    const std::vector<FrontierPoint> raw;
    FilterParams params;
    params.min_pts = 2;
    const BoundedList out = enforce_list_bounds({}, raw, g, params);
    EXPECT_TRUE(out.exhausted);
    EXPECT_EQ(out.final_perc, 0.0);
    EXPECT_LE(out.iterations, list_bounds_iteration_limit(params, g.frame()));
}

TEST(Frontier, RadiusClampReturnsOversizedList)
{
    /* Fully unknown map: every refilter keeps all points until the radius
     * reaches the map diagonal */
    const OccupancyGrid g(frame(8, 8));
    std::vector<FrontierPoint> raw;
    for (int i = 0; i < 12; ++i)
        raw.push_back(at({i % 8, i / 8}, g.frame()));
    const BoundedList out = enforce_list_bounds(raw, raw, g, {});
    EXPECT_TRUE(out.exhausted);
    EXPECT_EQ(out.points.size(), 12u);
    EXPECT_GE(out.final_rad, g.frame().diagonal());
}

TEST(Frontier, ThresholdClampFallsBackToSmallestOversizedList)
{
    /* Twelve points on the first unknown row: 80% unknown at radius 1,
     * under 60% from radius 3.25 on. A lowered threshold admits all twelve
     * again, the radius then grows until they all drop out, and the loop
     * swings between 12 and 0 until the threshold reaches 0. */
    OccupancyGrid g(frame(30, 20));
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 30; ++c)
            g.set_state(Cell{c, r}, CellState::Free);
    std::vector<FrontierPoint> raw;
    for (int c = 3; c < 27; c += 2)
        raw.push_back(at({c, 10}, g.frame()));
    ASSERT_EQ(raw.size(), 12u);
    ASSERT_NEAR(unknown_percentage(raw[0].position(), g, 1.0), 80.0, 1e-12);
    ASSERT_NEAR(unknown_percentage(raw[0].position(), g, 3.25), 100.0 * 22 / 37, 1e-12);

    const FilterParams params;
    const auto uni = filter_border_points(raw, g, params.rad, params.per_unk);
    const BoundedList out = enforce_list_bounds(uni, raw, g, params);
    EXPECT_TRUE(out.exhausted);
    EXPECT_EQ(out.final_perc, 0.0);
    EXPECT_EQ(out.points.size(), 12u);
    EXPECT_LE(out.iterations, list_bounds_iteration_limit(params, g.frame()));
}

TEST(Frontier, ListBoundsTerminatesWithinLimitOnFuzzedInputs)
{
    oracle::Gen gen(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = oracle::random_grid(gen, gen.integer(1, 25), gen.integer(1, 25),
                                           gen.real(0.0, 0.3), gen.real(0.0, 1.0),
                                           gen.real(0.05, 0.5));
        FilterParams params;
        params.per_unk = gen.real(0.0, 100.0);
        params.rad = gen.real(0.05, 2.0);
        params.min_pts = gen.integer(0, 5);
        params.max_pts = params.min_pts + gen.integer(1, 8);
        params.rad_step = gen.real(0.05, 0.5);
        params.perc_step = gen.real(1.0, 30.0);
        const auto raw = oracle::random_points(gen, g.frame(), gen.integer(0, 40));
        const auto uni = filter_border_points(raw, g, params.rad, params.per_unk);
        const BoundedList out = enforce_list_bounds(uni, raw, g, params);
        EXPECT_LE(out.iterations, list_bounds_iteration_limit(params, g.frame()));
        const auto n = static_cast<int>(out.points.size());
        if (!out.exhausted) {
            EXPECT_GT(n, params.min_pts);
            EXPECT_LT(n, params.max_pts);
        }
        EXPECT_LE(out.points.size(), deduplicate_by_cell(raw, g.frame()).size());
    }
}

TEST(Frontier, ParamsValidation)
{
    FilterParams p;
    EXPECT_NO_THROW(p.validate());
    p.max_pts = p.min_pts;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.per_unk = 120.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.rad_step = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}
