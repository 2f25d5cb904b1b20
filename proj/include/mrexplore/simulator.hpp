#ifndef MREXPLORE_SIMULATOR_HPP
#define MREXPLORE_SIMULATOR_HPP

#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "mrexplore/config.hpp"
#include "mrexplore/grid_map.hpp"
#include "mrexplore/map_quality.hpp"
#include "mrexplore/planner.hpp"
#include "mrexplore/pose_graph.hpp"
#include "mrexplore/server.hpp"

namespace mrexplore {

struct TickRecord
{
    double time = 0.0;
    std::vector<double> robot_coverage;
    double merged_coverage = 0.0;
    /* Candidate counts of the latest allocation turn (0 before the first) */
    std::size_t raw_frontiers = 0;
    std::size_t filtered_frontiers = 0;
    double map_entropy = 0.0;
    std::size_t loop_closures = 0;
};

/* One allocation turn */
struct IterationRecord
{
    double time = 0.0;
    AgentId agent = 0;
    std::size_t raw = 0;
    std::size_t filtered = 0;
    bool assigned = false;
    Point2 goal;
};

struct RunMetrics
{
    Method method = Method::Proposed;
    std::uint64_t seed = 0;
    std::vector<TickRecord> ticks;
    std::vector<IterationRecord> iterations;
    MapQuality quality;
    std::vector<double> distance;

    double final_coverage() const { return ticks.empty() ? 0.0 : ticks.back().merged_coverage; }
    /* 100 * (1 - filtered / raw) averaged over turns with raw > 0; zero when
     * there are none */
    double mean_reduction() const;
};

struct RobotState
{
    AgentId id = 0;
    Pose2 pose;
    OccupancyGrid map;
    PoseGraph graph;
    std::optional<GridPath> path;
    std::optional<Point2> goal;
    double distance = 0.0;
    /* Cells of goals this robot reached or abandoned and of candidates it
     * could not reach; it neither publishes nor bids on them again */
    std::vector<Cell> dismissed;
    bool requested = false;
    /* Ticks to wait before asking for another goal */
    int cooldown = 0;
};

/* Deterministic tick loop over a shared ground truth. Each tick every robot
 * senses and integrates its scan, the merged map is refreshed, robots
 * without a goal queue for a turn, the server grants at most one turn, and
 * robots with a path advance. */
class Simulation
{
public:
    /* Throws ConfigError when a start pose is outside the map or not on a
     * free truth cell */
    Simulation(const ScenarioConfig& config, GroundTruthMap truth);

    bool done() const { return done_; }
    void step();
    double time() const { return time_; }

    const ScenarioConfig& config() const { return config_; }
    const GroundTruthMap& truth() const { return truth_; }
    const std::vector<RobotState>& robots() const { return robots_; }
    const OccupancyGrid& merged_map() const { return merged_; }
    const AllocationServer& server() const { return server_; }
    const RunMetrics& metrics() const { return metrics_; }

    /* Final map quality and distances; call once the loop is done */
    RunMetrics finish();

private:
    void sense();
    void refresh_goals();
    void allocation_turn();
    void run_iteration(RobotState& robot);
    void move();
    void record();

    ScenarioConfig config_;
    GroundTruthMap truth_;
    std::vector<RobotState> robots_;
    OccupancyGrid merged_;
    AllocationServer server_;
    RunMetrics metrics_;
    std::size_t last_raw_ = 0;
    std::size_t last_filtered_ = 0;
    double time_ = 0.0;
    long tick_ = 0;
    bool done_ = false;
};

struct RunResult
{
    RunMetrics metrics;
    std::vector<OccupancyGrid> robot_maps;
    OccupancyGrid merged_map;
};

/* Loads the map, runs the scenario to completion */
RunResult run(const ScenarioConfig& config);
RunResult run(const ScenarioConfig& config, const GroundTruthMap& truth);

/* time,coverage_r0..coverage_rN-1,merged_coverage,raw_frontiers,
 * filtered_frontiers,map_entropy,loop_closures; six decimals */
void write_metrics_csv(std::ostream& out, const RunMetrics& metrics);
/* method,seed,final_time,final_coverage,mean_reduction,iterations,ssim,rmse,
 * alignment_error,total_distance,distance_r0..distance_rN-1 */
void write_summary_csv(std::ostream& out, const RunMetrics& metrics);

} // namespace mrexplore

#endif // MREXPLORE_SIMULATOR_HPP
