#ifndef MREXPLORE_ALLOCATION_HPP
#define MREXPLORE_ALLOCATION_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "mrexplore/frontier.hpp"
#include "mrexplore/grid_map.hpp"
#include "mrexplore/utility.hpp"

namespace mrexplore {

class NoAssignableGoalError : public std::runtime_error
{
public:
    NoAssignableGoalError() : std::runtime_error("no assignable goal") { }
};

/* Server-side memory: goals handed out so far and how many consecutive
 * turns each waiting agent has been passed over. Cell equality of goals is
 * judged in `frame`. */
struct AllocationState
{
    GridFrame frame;
    int goal_skip_wait = 5;
    std::vector<Point2> chosen_coords;
    std::map<AgentId, int> skip_counters;

    int skips(AgentId agent) const;
    bool is_chosen(Point2 p) const;
};

/* Picks the agent to serve from the pending set. The lowest id wins unless
 * serving it would leave some other pending agent deferred more than
 * goal_skip_wait times in a row; then the most-deferred agent is served
 * (ties to the lowest id), which always includes any agent already at the
 * threshold. Every other pending agent's counter increments; the served
 * agent's counter resets. Throws std::invalid_argument on an empty set. */
AgentId schedule(const std::set<AgentId>& pending, AllocationState& state);

struct RewardUpdate
{
    RewardMatrix matrix;
    /* False when every row was already suppressed; the matrix is unchanged */
    bool had_finite_reward = true;
};

/* Reward spreading. K = |max finite reward| / |chosen|; for every chosen
 * point c and row g: same cell -> suppressed, otherwise reward -= K / d^2
 * with d the Euclidean distance (d == 0 -> suppressed). Penalties from all
 * chosen points accumulate. Throws std::invalid_argument when chosen is
 * empty. */
RewardUpdate update_rewards(std::span<const Point2> chosen, RewardMatrix matrix,
                            const GridFrame& frame);

struct SelectionOptions
{
    bool spread_rewards = true;
    bool remember_goals = true;
};

/* Goal selection: spreads rewards against the remembered goals, takes the
 * highest reward (ties to the lowest row), skips already chosen cells and
 * records the winner. Throws NoAssignableGoalError when nothing is left. */
FrontierPoint select_goal(RewardMatrix matrix, AllocationState& state,
                          const SelectionOptions& options = {});

/* Drops remembered goals whose disc of radius rad is fully known */
void evict_explored_goals(AllocationState& state, const OccupancyGrid& merged, double rad);

} // namespace mrexplore

#endif // MREXPLORE_ALLOCATION_HPP
