#ifndef MREXPLORE_MESSAGES_HPP
#define MREXPLORE_MESSAGES_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mrexplore/geometry.hpp"

namespace mrexplore {

/* Agent -> server: ask for the next allocation turn */
struct RequestTurn
{
    AgentId agent = 0;
    friend bool operator==(const RequestTurn&, const RequestTurn&) = default;
};

/* Agent -> server: latest local frontier points */
struct SubmitPoints
{
    AgentId agent = 0;
    std::vector<Point2> points;
    friend bool operator==(const SubmitPoints&, const SubmitPoints&) = default;
};

/* Server -> agent: merged and filtered candidate list */
struct PointsReply
{
    std::vector<Point2> points;
    friend bool operator==(const PointsReply&, const PointsReply&) = default;
};

struct WireRewardRow
{
    double x = 0.0;
    double y = 0.0;
    double reward = 0.0;
    friend bool operator==(const WireRewardRow&, const WireRewardRow&) = default;
};

/* Agent -> server: reward matrix over the candidate list */
struct SubmitRewards
{
    AgentId agent = 0;
    std::vector<WireRewardRow> rows;
    friend bool operator==(const SubmitRewards&, const SubmitRewards&) = default;
};

/* Server -> agent: selected goal. NaN coordinates mean no assignable goal. */
struct GoalReply
{
    double x = 0.0;
    double y = 0.0;

    bool assigned() const { return x == x && y == y; }
    friend bool operator==(const GoalReply& a, const GoalReply& b)
    {
        if (!a.assigned() || !b.assigned())
            return a.assigned() == b.assigned();
        return a.x == b.x && a.y == b.y;
    }
};

using Message = std::variant<RequestTurn, SubmitPoints, PointsReply, SubmitRewards, GoalReply>;

class WireFormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/* Little-endian framing: one tag byte (1 RequestTurn .. 5 GoalReply),
 * agent ids as u32, list lengths as u32 prefixes, every numeric field as an
 * IEEE-754 binary64. */
std::vector<std::uint8_t> encode(const Message& message);
/* Throws WireFormatError on unknown tags, truncation or trailing bytes */
Message decode(std::span<const std::uint8_t> bytes);

} // namespace mrexplore

#endif // MREXPLORE_MESSAGES_HPP
