#include <gtest/gtest.h>

#include "mrexplore/config.hpp"

using namespace mrexplore;

namespace {

const char* kMinimal = R"(
[scenario]
map = maps/room.pgm
[robots]
count = 2
start_0 = 1.0, 2.0
start_1 = 3.5, 4.5, 1.57   # facing up
)";

std::string with(const std::string& extra)
{
    return std::string(kMinimal) + extra;
}

} // namespace

TEST(Config, DefaultsFollowTheReferenceParameters)
{
    const auto c = parse_config(kMinimal, "/base");
    EXPECT_EQ(c.map_path, std::filesystem::path("/base/maps/room.pgm"));
    EXPECT_EQ(c.method, Method::Proposed);
    EXPECT_DOUBLE_EQ(c.filter.per_unk, 60.0);
    EXPECT_DOUBLE_EQ(c.filter.rad, 1.0);
    EXPECT_EQ(c.filter.min_pts, 0);
    EXPECT_EQ(c.filter.max_pts, 10);
    EXPECT_EQ(c.goal_skip_wait, 5);
    EXPECT_DOUBLE_EQ(c.utility.lambda, 0.1);
    EXPECT_DOUBLE_EQ(c.graph.odometry_weight, 1.0);
    EXPECT_DOUBLE_EQ(c.graph.loop_weight, 2.0);
    ASSERT_EQ(c.starts.size(), 2u);
    EXPECT_DOUBLE_EQ(c.starts[0].x, 1.0);
    EXPECT_DOUBLE_EQ(c.starts[0].heading, 0.0);
    EXPECT_DOUBLE_EQ(c.starts[1].heading, 1.57);
}

TEST(Config, ParsesEverySection)
{
    const auto c = parse_config(with(R"(
[lidar]
beams = 90
max_range = 5
[filter]
per_unk = 40
rad = 2
min_pts = 1
max_pts = 8
rad_step = 0.5
perc_step = 5
[utility]
lambda = 0.2
tree_weight = 0.5
u2_weight = 2
[graph]
node_spacing = 1
loop_closure_radius = 2
odometry_weight = 3
loop_weight = 4
[server]
goal_skip_wait = 2
[map]
p_unknown = 0.5
p_free = 0.1
p_occupied = 0.9
[planner]
inflation = 0
)"),
                                "/b");
    EXPECT_EQ(c.beam_count, 90);
    EXPECT_DOUBLE_EQ(c.max_range, 5.0);
    EXPECT_DOUBLE_EQ(c.filter.per_unk, 40.0);
    EXPECT_EQ(c.filter.max_pts, 8);
    EXPECT_DOUBLE_EQ(c.filter.perc_step, 5.0);
    EXPECT_DOUBLE_EQ(c.utility.u2_weight, 2.0);
    EXPECT_DOUBLE_EQ(c.graph.loop_weight, 4.0);
    EXPECT_EQ(c.goal_skip_wait, 2);
    EXPECT_DOUBLE_EQ(c.probabilities.free, 0.1);
    EXPECT_EQ(c.planner.inflation, 0);
}

TEST(Config, MethodNames)
{
    for (Method m : {Method::Proposed, Method::Mags, Method::GreedyFrontier})
        EXPECT_EQ(parse_method(method_name(m)), m);
    EXPECT_EQ(method_name(Method::GreedyFrontier), "greedy_frontier");
    EXPECT_THROW(parse_method("random"), ConfigError);
}

TEST(Config, RejectsBadInput)
{
    EXPECT_THROW(parse_config(with("[bogus]\nx = 1\n"), "/"), ConfigError);
    EXPECT_THROW(parse_config(with("[lidar]\nbeam = 3\n"), "/"), ConfigError);
    EXPECT_THROW(parse_config(with("[lidar]\nbeams = many\n"), "/"), ConfigError);
    EXPECT_THROW(parse_config(with("[scenario]\nmax_sim_time = 0\n"), "/"), ConfigError);
    EXPECT_THROW(parse_config(with("[graph]\nnode_spacing = 2\nloop_closure_radius = 1\n"), "/"),
                 ConfigError);
    EXPECT_THROW(parse_config("[scenario]\nmap = a.pgm\n[robots]\ncount = 2\nstart_0 = 1, 1\n", "/"),
                 ConfigError);
    EXPECT_THROW(parse_config("[scenario]\nmap = a.pgm\n[robots]\ncount = 1\nstart_0 = 1\n", "/"),
                 ConfigError);
    EXPECT_THROW(parse_config("[robots]\ncount = 1\nstart_0 = 1, 1\n", "/"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/explorer.cfg"), ConfigError);
}

TEST(Config, AbsoluteMapPathIsKept)
{
    const auto c = parse_config(
        "[scenario]\nmap = /data/m.pgm\n[robots]\ncount = 1\nstart_0 = 1, 1\n", "/elsewhere");
    EXPECT_EQ(c.map_path, std::filesystem::path("/data/m.pgm"));
}

TEST(Config, BundledDeskConfigLoads)
{
    const auto c = load_config(std::filesystem::path(MREXPLORE_SOURCE_DIR) / "configs/desk.cfg");
    EXPECT_EQ(c.starts.size(), 3u);
    EXPECT_TRUE(std::filesystem::exists(c.map_path));
}
