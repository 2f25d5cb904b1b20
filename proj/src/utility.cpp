#include "mrexplore/utility.hpp"

#include <cmath>

namespace mrexplore {

void UtilityParams::validate() const
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("utility lambda must be positive");
    if (!(tree_weight >= 0.0) || !(u2_weight >= 0.0))
        throw std::invalid_argument("utility term weights must be non-negative");
}

PathEntropy path_entropy(const OccupancyGrid& grid, std::span<const Cell> path)
{
    if (path.empty())
        throw std::invalid_argument("no path");
    const auto& probs = grid.class_probabilities();
    const double h_unknown = cell_entropy(probs.unknown);
    const double h_free = cell_entropy(probs.free);
    const double h_occ = cell_entropy(probs.occupied);

    PathEntropy e;
    for (const Cell c : path) {
        switch (grid.state(c)) {
        case CellState::Unknown:
            e.bits += h_unknown;
            break;
        case CellState::Free:
            e.bits += h_free;
            break;
        case CellState::Occupied:
            e.bits += h_occ;
            break;
        }
    }
    e.cells = static_cast<int>(path.size());
    return e;
}

double decay(double distance, const UtilityParams& params)
{
    if (!(distance >= 0.0))
        throw std::invalid_argument("decay distance must be non-negative");
    return std::exp(-params.lambda * distance);
}

double u2(double entropy_bits, int length_cells, double rho, double gamma)
{
    if (length_cells < 1)
        throw std::invalid_argument("u2 needs a path of at least one cell");
    return (1.0 - entropy_bits / static_cast<double>(length_cells)) * rho + gamma;
}

RewardMatrix build_reward_matrix(AgentId agent, const Pose2& robot, const OccupancyGrid& grid,
                                 const PoseGraph& graph, std::span<const FrontierPoint> candidates,
                                 const PathQuery& planner, const UtilityParams& params,
                                 const GraphBuildParams& graph_params,
                                 std::vector<RewardTerms>* terms_out)
{
    if (candidates.empty())
        throw std::invalid_argument("build_reward_matrix needs at least one candidate");

    const double base_log_trees = graph.empty() ? 0.0 : log_spanning_trees(graph);

    std::vector<RewardTerms> terms(candidates.size());
    std::vector<double> gains;
    std::vector<std::size_t> reachable;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto path = planner(candidates[i]);
        if (!path)
            continue;
        RewardTerms& t = terms[i];
        t.reachable = true;
        t.entropy = path_entropy(grid, path->cells);
        t.gamma = decay(distance(robot.position(), candidates[i].position()), params);
        const auto waypoints = path->waypoints();
        t.tree_gain = graph.empty() ? 0.0
                                    : spanning_tree_gain(graph, base_log_trees, waypoints,
                                                         graph_params);
        gains.push_back(t.tree_gain);
        reachable.push_back(i);
    }
    if (reachable.empty())
        throw NoViableCandidatesError();

    const auto rho = normalize_gains(gains);
    for (std::size_t k = 0; k < reachable.size(); ++k)
        terms[reachable[k]].rho = rho[k];

    RewardMatrix matrix;
    matrix.owner = agent;
    matrix.rows.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const RewardTerms& t = terms[i];
        double reward = kSuppressed;
        if (t.reachable) {
            double second = t.gamma;
            if (params.form == RewardForm::EntropyAndTreeGain)
                second = u2(t.entropy.bits, t.entropy.cells, t.rho, t.gamma);
            reward = params.tree_weight * t.tree_gain + params.u2_weight * second;
        }
        matrix.rows.push_back({candidates[i], reward});
    }
    if (terms_out)
        *terms_out = std::move(terms);
    return matrix;
}

} // namespace mrexplore
