#include "mrexplore/allocation.hpp"

#include <algorithm>
#include <cmath>

namespace mrexplore {

int AllocationState::skips(AgentId agent) const
{
    const auto it = skip_counters.find(agent);
    return it == skip_counters.end() ? 0 : it->second;
}

bool AllocationState::is_chosen(Point2 p) const
{
    const Cell c = world_to_grid(p, frame);
    return std::any_of(chosen_coords.begin(), chosen_coords.end(),
                       [&](Point2 q) { return world_to_grid(q, frame) == c; });
}

namespace {

/* True when every agent in `waiting` (counters already incremented for this
 * turn) can still be served, one per turn in order of urgency, before its
 * counter passes the threshold */
bool deadlines_feasible(std::vector<int> counters_after_turn, int threshold)
{
    std::sort(counters_after_turn.begin(), counters_after_turn.end(), std::greater<>());
    for (std::size_t k = 0; k < counters_after_turn.size(); ++k)
        if (threshold - counters_after_turn[k] < static_cast<int>(k))
            return false;
    return true;
}

} // namespace

AgentId schedule(const std::set<AgentId>& pending, AllocationState& state)
{
    if (pending.empty())
        throw std::invalid_argument("schedule needs at least one pending agent");

    const AgentId by_priority = *pending.begin();
    std::vector<int> after;
    for (AgentId a : pending)
        if (a != by_priority)
            after.push_back(state.skips(a) + 1);

    AgentId served = by_priority;
    if (!deadlines_feasible(after, state.goal_skip_wait)) {
        int most = -1;
        for (AgentId a : pending) {
            if (state.skips(a) > most) {
                most = state.skips(a);
                served = a;
            }
        }
    }

    for (AgentId a : pending)
        state.skip_counters[a] = a == served ? 0 : state.skips(a) + 1;
    return served;
}

RewardUpdate update_rewards(std::span<const Point2> chosen, RewardMatrix matrix,
                            const GridFrame& frame)
{
    if (chosen.empty())
        throw std::invalid_argument("update_rewards needs at least one chosen point");

    double max_reward = kSuppressed;
    for (const auto& row : matrix.rows)
        max_reward = std::max(max_reward, row.reward);
    if (is_suppressed(max_reward))
        return {std::move(matrix), false};

    const double k_scale = std::abs(max_reward) / static_cast<double>(chosen.size());
    for (const Point2 c : chosen) {
        const Cell chosen_cell = world_to_grid(c, frame);
        for (auto& row : matrix.rows) {
            if (world_to_grid(row.point.position(), frame) == chosen_cell)
                row.reward = kSuppressed;
            if (is_suppressed(row.reward))
                continue;
            const double d = distance(c, row.point.position());
            if (d != 0.0)
                row.reward -= k_scale / (d * d);
            else
                row.reward = kSuppressed;
        }
    }
    return {std::move(matrix), true};
}

namespace {

std::size_t argmax(const RewardMatrix& matrix)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < matrix.rows.size(); ++i)
        if (matrix.rows[i].reward > matrix.rows[best].reward)
            best = i;
    return best;
}

} // namespace

FrontierPoint select_goal(RewardMatrix matrix, AllocationState& state,
                          const SelectionOptions& options)
{
    if (matrix.rows.empty())
        throw NoAssignableGoalError();
    if (options.spread_rewards && !state.chosen_coords.empty())
        matrix = update_rewards(state.chosen_coords, std::move(matrix), state.frame).matrix;

    while (true) {
        const std::size_t best = argmax(matrix);
        RewardRow& row = matrix.rows[best];
        if (is_suppressed(row.reward))
            throw NoAssignableGoalError();
        if (options.remember_goals && state.is_chosen(row.point.position())) {
            row.reward = kSuppressed;
            continue;
        }
        if (options.remember_goals)
            state.chosen_coords.push_back(row.point.position());
        return row.point;
    }
}

void evict_explored_goals(AllocationState& state, const OccupancyGrid& merged, double rad)
{
    std::erase_if(state.chosen_coords,
                  [&](Point2 p) { return disc_fully_known(merged, p, rad); });
}

} // namespace mrexplore
