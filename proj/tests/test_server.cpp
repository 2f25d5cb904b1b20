#include <gtest/gtest.h>

#include <cmath>

#include "mrexplore/server.hpp"

using namespace mrexplore;

namespace {

const GridFrame kFrame{1.0, 0.0, 0.0, 20, 20};

/* Left half known free, right half unknown */
OccupancyGrid half_known()
{
    OccupancyGrid g(kFrame);
    for (int r = 0; r < 20; ++r)
        for (int c = 0; c < 10; ++c)
            g.set_state(Cell{c, r}, CellState::Free);
    return g;
}

AllocationServer make_server(const ServerPolicy& policy = {})
{
    AllocationServer s(kFrame, FilterParams{}, 5, policy);
    s.update_merged_map(half_known());
    return s;
}

} // namespace

TEST(Server, OneTurnAtATimeInIdOrder)
{
    auto s = make_server();
    s.request_turn({2});
    s.request_turn({0});
    s.request_turn({1});
    EXPECT_EQ(s.grant_turn(), AgentId{0});
    EXPECT_EQ(s.grant_turn(), std::nullopt);
    EXPECT_EQ(s.turn_holder(), AgentId{0});
    s.release_turn();
    EXPECT_EQ(s.grant_turn(), AgentId{1});
    EXPECT_EQ(s.pending(), (std::set<AgentId>{2}));
}

TEST(Server, AgentDeferredFiveTimesIsServedNext)
{
    /* Agents 0 and 1 re-request after every turn; agent 2 waits throughout */
    auto s = make_server();
    s.request_turn({2});
    std::vector<AgentId> order;
    for (int turn = 0; turn < 7; ++turn) {
        s.request_turn({0});
        s.request_turn({1});
        const auto served = s.grant_turn();
        ASSERT_TRUE(served);
        order.push_back(*served);
        s.release_turn();
        if (*served == 2)
            break;
    }
    ASSERT_EQ(order.size(), 6u);
    EXPECT_EQ(order.back(), 2u);
    EXPECT_EQ(s.state().skips(2), 0);
}

TEST(Server, OnlyTheHolderMaySubmit)
{
    auto s = make_server();
    s.request_turn({0});
    s.grant_turn();
    EXPECT_THROW(s.submit_points({1, {{9.5, 4.5}}}), std::logic_error);
    EXPECT_THROW(s.submit_rewards({1, {{9.5, 4.5, 1.0}}}), std::logic_error);
}

TEST(Server, MergesEveryAgentsLatestList)
{
    auto s = make_server({.filter_points = false, .spread_rewards = false, .remember_goals = false});
    s.publish_points({1, {{9.5, 2.5}}});
    s.publish_points({2, {{9.5, 15.5}, {9.5, 2.5}}});
    /* A newer list replaces the old one */
    s.publish_points({2, {{9.5, 15.5}}});
    s.request_turn({0});
    s.grant_turn();
    const PointsReply reply = s.submit_points({0, {{9.5, 9.5}}});
    EXPECT_EQ(reply.points.size(), 3u);
    EXPECT_EQ(s.last_merge().raw, 3u);
    EXPECT_EQ(s.last_merge().filtered, 3u);
}

TEST(Server, FilteringDropsPointsAwayFromTheBorder)
{
    auto s = make_server();
    s.request_turn({0});
    s.grant_turn();
    /* (2.5, 2.5) sits deep inside known space */
    const PointsReply reply = s.submit_points({0, {{9.5, 9.5}, {2.5, 2.5}}});
    ASSERT_EQ(reply.points.size(), 1u);
    EXPECT_DOUBLE_EQ(reply.points[0].x, 9.5);
}

TEST(Server, RewardsEndTheTurnAndGoalsAreRemembered)
{
    auto s = make_server();
    s.request_turn({0});
    s.grant_turn();
    s.submit_points({0, {{9.5, 9.5}, {9.5, 3.5}}});
    const GoalReply g = s.submit_rewards({0, {{9.5, 9.5, 2.0}, {9.5, 3.5, 1.0}}});
    EXPECT_TRUE(g.assigned());
    EXPECT_DOUBLE_EQ(g.y, 9.5);
    EXPECT_EQ(s.turn_holder(), std::nullopt);
    ASSERT_EQ(s.state().chosen_coords.size(), 1u);

    /* The chosen point is no longer offered to the next agent */
    s.request_turn({1});
    s.grant_turn();
    const PointsReply next = s.submit_points({1, {{9.5, 9.5}, {9.5, 3.5}}});
    ASSERT_EQ(next.points.size(), 1u);
    EXPECT_DOUBLE_EQ(next.points[0].y, 3.5);
}

TEST(Server, MessageInterfaceReportsMissingGoalAsNaN)
{
    auto s = make_server();
    EXPECT_EQ(s.handle(RequestTurn{0}), std::nullopt);
    s.grant_turn();
    const auto reply = s.handle(SubmitPoints{0, {{9.5, 9.5}}});
    ASSERT_TRUE(reply);
    EXPECT_TRUE(std::holds_alternative<PointsReply>(*reply));
    const auto goal = s.handle(SubmitRewards{0, {{9.5, 9.5, kSuppressed}}});
    ASSERT_TRUE(goal);
    EXPECT_FALSE(std::get<GoalReply>(*goal).assigned());
    EXPECT_EQ(s.turn_holder(), std::nullopt);

    /* Points from an agent without the turn are stored, not answered */
    EXPECT_EQ(s.handle(SubmitPoints{3, {{9.5, 1.5}}}), std::nullopt);
    EXPECT_THROW(s.handle(GoalReply{1.0, 1.0}), std::invalid_argument);
}

TEST(Server, ExploredGoalsAreForgotten)
{
    auto s = make_server();
    s.request_turn({0});
    s.grant_turn();
    s.submit_points({0, {{9.5, 9.5}}});
    s.submit_rewards({0, {{9.5, 9.5, 1.0}}});
    ASSERT_EQ(s.state().chosen_coords.size(), 1u);
    s.update_merged_map(OccupancyGrid(kFrame, {}, CellState::Free));
    EXPECT_TRUE(s.state().chosen_coords.empty());
}
