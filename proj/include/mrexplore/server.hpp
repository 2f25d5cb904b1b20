#ifndef MREXPLORE_SERVER_HPP
#define MREXPLORE_SERVER_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mrexplore/allocation.hpp"
#include "mrexplore/frontier.hpp"
#include "mrexplore/grid_map.hpp"
#include "mrexplore/messages.hpp"

namespace mrexplore {

struct ServerPolicy
{
    /* Border filter and list-size control on the merged candidate list */
    bool filter_points = true;
    bool spread_rewards = true;
    bool remember_goals = true;
};

/* Counts from the most recent candidate merge */
struct MergeStats
{
    std::size_t raw = 0;
    std::size_t filtered = 0;
    double final_rad = 0.0;
    double final_perc = 0.0;
    int iterations = 0;
    bool exhausted = false;
};

/* Centralized allocation server. One agent holds the turn at a time; only
 * that agent may submit its points and reward matrix, and the turn ends with
 * the goal reply. */
class AllocationServer
{
public:
    AllocationServer(const GridFrame& frame, const FilterParams& filter, int goal_skip_wait,
                     const ServerPolicy& policy = {});

    /* Latest merged map; remembered goals whose surroundings are fully known
     * are forgotten */
    void update_merged_map(const OccupancyGrid& merged);

    void request_turn(const RequestTurn& request);
    /* Hands the turn to the next pending agent; nullopt when nobody waits or
     * a turn is still in progress */
    std::optional<AgentId> grant_turn();
    std::optional<AgentId> turn_holder() const { return holder_; }
    /* Ends the current turn without a goal */
    void release_turn();

    /* Stores an agent's latest frontier list without merging */
    void publish_points(const SubmitPoints& points);
    /* Stores the turn holder's list and returns the merged candidates built
     * from every agent's latest list */
    PointsReply submit_points(const SubmitPoints& points);
    /* Selects the turn holder's goal and ends its turn. Throws
     * NoAssignableGoalError (the turn still ends). */
    GoalReply submit_rewards(const SubmitRewards& rewards);

    /* Message-level entry point; returns the reply for messages that have one */
    std::optional<Message> handle(const Message& message);

    const AllocationState& state() const { return state_; }
    const MergeStats& last_merge() const { return last_merge_; }
    const std::set<AgentId>& pending() const { return pending_; }
    const ServerPolicy& policy() const { return policy_; }

private:
    void require_holder(AgentId agent) const;

    FilterParams filter_;
    ServerPolicy policy_;
    AllocationState state_;
    std::optional<OccupancyGrid> merged_;
    std::map<AgentId, std::vector<FrontierPoint>> latest_;
    std::set<AgentId> pending_;
    std::optional<AgentId> holder_;
    MergeStats last_merge_;
};

} // namespace mrexplore

#endif // MREXPLORE_SERVER_HPP
