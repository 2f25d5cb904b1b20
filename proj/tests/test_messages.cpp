#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "mrexplore/messages.hpp"
#include "oracles.hpp"

using namespace mrexplore;

TEST(Messages, RoundTripEveryKind)
{
    const std::vector<Message> samples{
        RequestTurn{3},
        SubmitPoints{1, {{0.5, 1.5}, {-2.25, 1e9}}},
        SubmitPoints{7, {}},
        PointsReply{{{4.0, 5.0}}},
        SubmitRewards{2, {{1.0, 2.0, 3.5}, {4.0, 5.0, -std::numeric_limits<double>::infinity()}}},
        GoalReply{9.5, -0.5},
    };
    for (const auto& m : samples)
        EXPECT_EQ(decode(encode(m)), m);
}

TEST(Messages, NoGoalReplyRoundTrips)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const Message m = GoalReply{nan, nan};
    const auto back = std::get<GoalReply>(decode(encode(m)));
    EXPECT_FALSE(back.assigned());
}

TEST(Messages, LayoutIsLittleEndianWithTagAndPrefixes)
{
    const auto bytes = encode(SubmitPoints{0x01020304u, {{1.0, 2.0}}});
    ASSERT_EQ(bytes.size(), 1u + 4u + 4u + 16u);
    EXPECT_EQ(bytes[0], 2);
    EXPECT_EQ(bytes[1], 0x04);
    EXPECT_EQ(bytes[4], 0x01);
    EXPECT_EQ(bytes[5], 1);
    EXPECT_EQ(bytes[6], 0);
    double x = 0.0;
    std::memcpy(&x, &bytes[9], sizeof x);
    EXPECT_EQ(x, 1.0);
}

TEST(Messages, RejectsMalformedInput)
{
    EXPECT_THROW(decode(std::vector<std::uint8_t>{}), WireFormatError);
    EXPECT_THROW(decode(std::vector<std::uint8_t>{42}), WireFormatError);
    auto bytes = encode(SubmitRewards{1, {{1.0, 2.0, 3.0}}});
    auto truncated = bytes;
    truncated.pop_back();
    EXPECT_THROW(decode(truncated), WireFormatError);
    bytes.push_back(0);
    EXPECT_THROW(decode(bytes), WireFormatError);
}

TEST(Messages, RandomRoundTrips)
{
    oracle::Gen gen(64);
    for (int trial = 0; trial < 200; ++trial) {
        SubmitRewards m{static_cast<AgentId>(gen.integer(0, 1000)), {}};
        for (int i = gen.integer(0, 20); i > 0; --i)
            m.rows.push_back({gen.real(-1e3, 1e3), gen.real(-1e3, 1e3), gen.real(-10, 10)});
        EXPECT_EQ(decode(encode(m)), Message{m});
    }
}
