#include "mrexplore/server.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mrexplore {

AllocationServer::AllocationServer(const GridFrame& frame, const FilterParams& filter,
                                   int goal_skip_wait, const ServerPolicy& policy) :
    filter_(filter), policy_(policy)
{
    frame.validate();
    filter_.validate();
    if (goal_skip_wait < 0)
        throw std::invalid_argument("goal_skip_wait must be non-negative");
    state_.frame = frame;
    state_.goal_skip_wait = goal_skip_wait;
}

void AllocationServer::update_merged_map(const OccupancyGrid& merged)
{
    merged_ = merged;
    state_.frame = merged.frame();
    if (policy_.remember_goals)
        evict_explored_goals(state_, merged, filter_.rad);
}

void AllocationServer::request_turn(const RequestTurn& request)
{
    if (holder_ != request.agent)
        pending_.insert(request.agent);
}

std::optional<AgentId> AllocationServer::grant_turn()
{
    if (holder_ || pending_.empty())
        return std::nullopt;
    const AgentId served = schedule(pending_, state_);
    pending_.erase(served);
    holder_ = served;
    return served;
}

void AllocationServer::release_turn()
{
    holder_.reset();
}

void AllocationServer::require_holder(AgentId agent) const
{
    if (holder_ != agent)
        throw std::logic_error("agent " + std::to_string(agent) + " does not hold the turn");
}

void AllocationServer::publish_points(const SubmitPoints& points)
{
    auto& list = latest_[points.agent];
    list.clear();
    for (const Point2 p : points.points)
        list.push_back({p.x, p.y, points.agent});
}

PointsReply AllocationServer::submit_points(const SubmitPoints& points)
{
    require_holder(points.agent);
    if (!merged_)
        throw std::logic_error("server has no merged map yet");
    publish_points(points);

    std::vector<FrontierPoint> raw;
    for (const auto& [agent, list] : latest_)
        raw.insert(raw.end(), list.begin(), list.end());

    last_merge_ = {};
    last_merge_.raw = raw.size();
    last_merge_.final_rad = filter_.rad;
    last_merge_.final_perc = filter_.per_unk;

    if (policy_.remember_goals)
        std::erase_if(raw, [&](const FrontierPoint& p) { return state_.is_chosen(p.position()); });

    std::vector<FrontierPoint> candidates;
    if (policy_.filter_points) {
        auto uni = filter_border_points(raw, *merged_, filter_.rad, filter_.per_unk);
        BoundedList bounded = enforce_list_bounds(std::move(uni), raw, *merged_, filter_);
        last_merge_.final_rad = bounded.final_rad;
        last_merge_.final_perc = bounded.final_perc;
        last_merge_.iterations = bounded.iterations;
        last_merge_.exhausted = bounded.exhausted;
        candidates = std::move(bounded.points);
    } else {
        candidates = deduplicate_by_cell(raw, merged_->frame());
    }
    last_merge_.filtered = candidates.size();

    PointsReply reply;
    reply.points.reserve(candidates.size());
    for (const auto& p : candidates)
        reply.points.push_back(p.position());
    return reply;
}

GoalReply AllocationServer::submit_rewards(const SubmitRewards& rewards)
{
    require_holder(rewards.agent);
    holder_.reset();

    RewardMatrix matrix;
    matrix.owner = rewards.agent;
    for (const auto& row : rewards.rows)
        matrix.rows.push_back({{row.x, row.y, rewards.agent}, row.reward});

    const FrontierPoint goal = select_goal(
        std::move(matrix), state_, {policy_.spread_rewards, policy_.remember_goals});
    return {goal.x, goal.y};
}

std::optional<Message> AllocationServer::handle(const Message& message)
{
    if (const auto* m = std::get_if<RequestTurn>(&message)) {
        request_turn(*m);
        return std::nullopt;
    }
    if (const auto* m = std::get_if<SubmitPoints>(&message)) {
        if (holder_ == m->agent)
            return submit_points(*m);
        publish_points(*m);
        return std::nullopt;
    }
    if (const auto* m = std::get_if<SubmitRewards>(&message)) {
        try {
            return submit_rewards(*m);
        } catch (const NoAssignableGoalError&) {
            constexpr double nan = std::numeric_limits<double>::quiet_NaN();
            return GoalReply{nan, nan};
        }
    }
    throw std::invalid_argument("server cannot handle reply messages");
}

} // namespace mrexplore
