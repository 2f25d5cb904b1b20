#ifndef MREXPLORE_UTILITY_HPP
#define MREXPLORE_UTILITY_HPP

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mrexplore/frontier.hpp"
#include "mrexplore/grid_map.hpp"
#include "mrexplore/planner.hpp"
#include "mrexplore/pose_graph.hpp"

namespace mrexplore {

/* Reward of a candidate that must never be selected. Orders below every
 * finite reward. */
inline constexpr double kSuppressed = -std::numeric_limits<double>::infinity();

inline bool is_suppressed(double reward)
{
    return reward == kSuppressed;
}

enum class RewardForm
{
    /* spanning-tree gain + (1 - E/L) rho + gamma */
    EntropyAndTreeGain,
    /* spanning-tree gain + gamma */
    TreeGainAndDecay,
};

struct UtilityParams
{
    double lambda = 0.1;      // decay rate per meter
    double tree_weight = 1.0; // scale of the spanning-tree gain term
    double u2_weight = 1.0;   // scale of the entropy/decay term
    RewardForm form = RewardForm::EntropyAndTreeGain;

    void validate() const;
};

struct PathEntropy
{
    double bits = 0.0; // E: summed cell entropy along the path
    int cells = 0;     // L: number of path cells

    double normalized() const { return bits / static_cast<double>(cells); }
};

struct RewardRow
{
    FrontierPoint point;
    double reward = 0.0;
};

/* Candidate rewards of one agent, one row per candidate, in candidate order */
struct RewardMatrix
{
    AgentId owner = 0;
    std::vector<RewardRow> rows;
};

class NoViableCandidatesError : public std::runtime_error
{
public:
    NoViableCandidatesError() : std::runtime_error("no viable candidates") { }
};

/* Throws std::invalid_argument("no path") on an empty path */
PathEntropy path_entropy(const OccupancyGrid& grid, std::span<const Cell> path);

/* exp(-lambda * distance) */
double decay(double distance, const UtilityParams& params);

/* (1 - E / L) * rho + gamma */
double u2(double entropy_bits, int length_cells, double rho, double gamma);

/* Answers a path query for a candidate; nullopt when unreachable */
using PathQuery = std::function<std::optional<GridPath>(const FrontierPoint&)>;

struct RewardTerms
{
    double tree_gain = 0.0;
    double rho = 0.0;
    double gamma = 0.0;
    PathEntropy entropy;
    bool reachable = false;
};

/* Per-candidate reward computation for one agent. Unreachable candidates get
 * kSuppressed. Throws NoViableCandidatesError when every candidate is
 * unreachable, std::invalid_argument when candidates is empty. */
RewardMatrix build_reward_matrix(AgentId agent, const Pose2& robot, const OccupancyGrid& grid,
                                 const PoseGraph& graph, std::span<const FrontierPoint> candidates,
                                 const PathQuery& planner, const UtilityParams& params,
                                 const GraphBuildParams& graph_params,
                                 std::vector<RewardTerms>* terms = nullptr);

} // namespace mrexplore

#endif // MREXPLORE_UTILITY_HPP
