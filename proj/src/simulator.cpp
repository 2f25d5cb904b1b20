#include "mrexplore/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include "mrexplore/frontier.hpp"
#include "mrexplore/lidar.hpp"
#include "mrexplore/map_io.hpp"
#include "mrexplore/utility.hpp"

namespace mrexplore {

double RunMetrics::mean_reduction() const
{
    double sum = 0.0;
    int n = 0;
    for (const auto& it : iterations) {
        if (it.raw == 0)
            continue;
        sum += 100.0 * (1.0 - static_cast<double>(it.filtered) / static_cast<double>(it.raw));
        ++n;
    }
    return n == 0 ? 0.0 : sum / n;
}

namespace {

ServerPolicy policy_for(Method method)
{
    if (method == Method::Proposed)
        return {true, true, true};
    /* Baselines see every detected point and get plain argmax selection */
    return {false, false, false};
}

bool is_dismissed(const RobotState& robot, Cell c)
{
    return std::find(robot.dismissed.begin(), robot.dismissed.end(), c) != robot.dismissed.end();
}

bool free_start(const GroundTruthMap& truth, Point2 p)
{
    const Cell c = world_to_grid(p, truth.frame());
    return truth.frame().contains(c) && !truth.occupied(c);
}

/* Truth cells crossed by the straight move from a to b are all free */
bool segment_free(const GroundTruthMap& truth, Point2 a, Point2 b)
{
    const double len = distance(a, b);
    if (len == 0.0)
        return free_start(truth, a);
    bool ok = true;
    traverse_ray(truth.frame(), a, std::atan2(b.y - a.y, b.x - a.x), len, [&](Cell c, double) {
        if (truth.occupied(c))
            ok = false;
        return ok;
    });
    return ok && free_start(truth, b);
}

} // namespace

Simulation::Simulation(const ScenarioConfig& config, GroundTruthMap truth) :
    config_(config), truth_(std::move(truth)),
    merged_(truth_.frame(), config.probabilities),
    server_(truth_.frame(), config.filter, config.goal_skip_wait, policy_for(config.method))
{
    config_.validate();
    if (config_.method == Method::Mags)
        config_.utility.form = RewardForm::TreeGainAndDecay;

    std::mt19937_64 rng(config_.seed);
    std::uniform_real_distribution<double> jitter(-config_.start_jitter, config_.start_jitter);
    for (std::size_t i = 0; i < config_.starts.size(); ++i) {
        const Pose2 nominal = config_.starts[i];
        if (!free_start(truth_, nominal.position()))
            throw ConfigError(fmt::format("robots.start_{} ({}, {}) is not on a free map cell", i,
                                          nominal.x, nominal.y));
        Pose2 pose = nominal;
        if (config_.start_jitter > 0.0) {
            for (int attempt = 0; attempt < 32; ++attempt) {
                const Pose2 candidate{nominal.x + jitter(rng), nominal.y + jitter(rng),
                                      nominal.heading};
                if (segment_free(truth_, nominal.position(), candidate.position())) {
                    pose = candidate;
                    break;
                }
            }
        }
        RobotState robot{.id = static_cast<AgentId>(i),
                         .pose = pose,
                         .map = OccupancyGrid(truth_.frame(), config_.probabilities),
                         .graph = {},
                         .path = {},
                         .goal = {},
                         .dismissed = {}};
        extend_trajectory(robot.graph, pose, config_.graph);
        robots_.push_back(std::move(robot));
    }
    metrics_.method = config_.method;
    metrics_.seed = config_.seed;
}

void Simulation::sense()
{
    std::vector<OccupancyGrid> maps;
    maps.reserve(robots_.size());
    for (auto& robot : robots_) {
        const LidarScan scan = raycast(truth_, robot.pose, config_.beam_count, config_.max_range);
        integrate_scan_inplace(robot.map, scan);
        maps.push_back(robot.map);
    }
    merged_ = merge_maps(maps);
    server_.update_merged_map(merged_);
}

void Simulation::record()
{
    TickRecord row;
    row.time = time_;
    for (const auto& robot : robots_) {
        row.robot_coverage.push_back(coverage_percent(robot.map, truth_));
        row.loop_closures += robot.graph.loop_closure_count();
    }
    row.merged_coverage = coverage_percent(merged_, truth_);
    row.raw_frontiers = last_raw_;
    row.filtered_frontiers = last_filtered_;
    row.map_entropy = map_entropy(merged_);
    metrics_.ticks.push_back(std::move(row));
}

void Simulation::refresh_goals()
{
    for (auto& robot : robots_) {
        if (robot.goal) {
            const bool arrived = robot.path && remaining_length(*robot.path, robot.pose.position()) <= 1e-9;
            const bool explored = disc_fully_known(merged_, *robot.goal, config_.filter.rad);
            if (arrived || explored) {
                robot.dismissed.push_back(world_to_grid(*robot.goal, merged_.frame()));
                spdlog::debug("t={:.1f} robot {} {} goal ({:.2f}, {:.2f})", time_, robot.id,
                              arrived ? "reached" : "abandoned", robot.goal->x, robot.goal->y);
                robot.goal.reset();
                robot.path.reset();
            }
        }
        if (robot.goal && robot.path) {
            bool blocked = false;
            for (const Cell c : robot.path->cells)
                blocked = blocked || merged_.state(c) == CellState::Occupied;
            if (blocked) {
                const Cell start = world_to_grid(robot.pose.position(), merged_.frame());
                DistanceField field(merged_, start, config_.planner);
                robot.path = field.path_to(world_to_grid(*robot.goal, merged_.frame()));
                if (!robot.path)
                    robot.goal.reset();
            }
        }
        if (robot.cooldown > 0) {
            --robot.cooldown;
            continue;
        }
        if (!robot.goal && !robot.requested) {
            server_.request_turn({robot.id});
            robot.requested = true;
        }
    }
}

void Simulation::allocation_turn()
{
    const auto holder = server_.grant_turn();
    if (!holder)
        return;
    RobotState& robot = robots_[*holder];
    robot.requested = false;
    run_iteration(robot);
    if (!robot.goal)
        robot.cooldown = 1;
}

void Simulation::run_iteration(RobotState& robot)
{
    const GridFrame& frame = merged_.frame();
    SubmitPoints own{robot.id, {}};
    for (const auto& other : robots_) {
        SubmitPoints msg{other.id, {}};
        for (const auto& p : detect_frontiers(other.map, other.id))
            if (!is_dismissed(other, world_to_grid(p.position(), frame)))
                msg.points.push_back(p.position());
        if (other.id == robot.id)
            own = std::move(msg);
        else
            server_.publish_points(msg);
    }
    const PointsReply reply = server_.submit_points(own);
    const MergeStats& stats = server_.last_merge();
    spdlog::debug("t={:.1f} merge raw={} filtered={} rad={} perc={} passes={}{}", time_, stats.raw,
                  stats.filtered, stats.final_rad, stats.final_perc, stats.iterations,
                  stats.exhausted ? " (clamped)" : "");
    last_raw_ = stats.raw;
    last_filtered_ = stats.filtered;

    IterationRecord rec{time_, robot.id, stats.raw, stats.filtered, false, {}};
    auto fail = [&](const char* why) {
        spdlog::debug("t={:.1f} robot {} gets no goal: {}", time_, robot.id, why);
        metrics_.iterations.push_back(rec);
    };
    if (reply.points.empty()) {
        server_.release_turn();
        return fail("no candidates");
    }

    const DistanceField field(merged_, world_to_grid(robot.pose.position(), frame),
                              config_.planner);
    std::vector<FrontierPoint> candidates;
    for (const Point2 p : reply.points)
        candidates.push_back({p.x, p.y, robot.id});

    SubmitRewards rewards{robot.id, {}};
    if (config_.method == Method::GreedyFrontier) {
        bool any = false;
        for (const auto& c : candidates) {
            const Cell cell = world_to_grid(c.position(), frame);
            const bool ok = field.reachable(cell);
            if (!ok)
                robot.dismissed.push_back(cell);
            any = any || ok;
            rewards.rows.push_back({c.x, c.y, ok ? -field.cost(cell) : kSuppressed});
        }
        if (!any) {
            server_.release_turn();
            return fail("no reachable candidate");
        }
    } else {
        const PathQuery query = [&](const FrontierPoint& p) {
            return field.path_to(world_to_grid(p.position(), frame));
        };
        try {
            const RewardMatrix matrix =
                build_reward_matrix(robot.id, robot.pose, merged_, robot.graph, candidates, query,
                                    config_.utility, config_.graph);
            for (const auto& row : matrix.rows) {
                if (is_suppressed(row.reward))
                    robot.dismissed.push_back(world_to_grid(row.point.position(), frame));
                rewards.rows.push_back({row.point.x, row.point.y, row.reward});
            }
        } catch (const NoViableCandidatesError&) {
            for (const auto& c : candidates)
                robot.dismissed.push_back(world_to_grid(c.position(), frame));
            server_.release_turn();
            return fail("no reachable candidate");
        }
    }

    bool any_left = false;
    for (auto& row : rewards.rows) {
        if (is_dismissed(robot, world_to_grid({row.x, row.y}, frame)))
            row.reward = kSuppressed;
        any_left = any_left || !is_suppressed(row.reward);
    }
    if (!any_left) {
        server_.release_turn();
        return fail("only visited candidates");
    }

    GoalReply goal;
    try {
        goal = server_.submit_rewards(rewards);
    } catch (const NoAssignableGoalError&) {
        return fail("no assignable goal");
    }
    auto path = field.path_to(world_to_grid({goal.x, goal.y}, frame));
    if (!path)
        return fail("goal unreachable");

    robot.goal = Point2{goal.x, goal.y};
    robot.path = std::move(path);
    rec.assigned = true;
    rec.goal = *robot.goal;
    metrics_.iterations.push_back(rec);
    spdlog::debug("t={:.1f} robot {} goal ({:.2f}, {:.2f}) from {} of {} points", time_, robot.id,
                  goal.x, goal.y, stats.filtered, stats.raw);
}

void Simulation::move()
{
    for (auto& robot : robots_) {
        if (!robot.path)
            continue;
        const Pose2 next = step_along(*robot.path, robot.pose, config_.speed, config_.dt);
        if (!segment_free(truth_, robot.pose.position(), next.position())) {
            /* The plan crossed space that was unknown when it was made */
            robot.path.reset();
            robot.goal.reset();
            continue;
        }
        robot.distance += distance(robot.pose.position(), next.position());
        robot.pose = next;
        extend_trajectory(robot.graph, robot.pose, config_.graph);
    }
}

void Simulation::step()
{
    if (done_)
        return;
    time_ = static_cast<double>(tick_) * config_.dt;
    sense();
    record();
    const bool out_of_time = time_ + 1e-9 >= config_.max_sim_time;
    const bool complete = metrics_.ticks.back().merged_coverage >= 100.0 ||
                          detect_frontiers(merged_).empty();
    if (out_of_time || complete) {
        done_ = true;
        return;
    }
    refresh_goals();
    allocation_turn();
    move();
    ++tick_;
}

RunMetrics Simulation::finish()
{
    metrics_.quality = map_quality(merged_, truth_);
    metrics_.distance.clear();
    for (const auto& robot : robots_)
        metrics_.distance.push_back(robot.distance);
    return metrics_;
}

RunResult run(const ScenarioConfig& config, const GroundTruthMap& truth)
{
    Simulation sim(config, truth);
    while (!sim.done())
        sim.step();
    RunResult result{sim.finish(), {}, sim.merged_map()};
    for (const auto& robot : sim.robots())
        result.robot_maps.push_back(robot.map);
    return result;
}

RunResult run(const ScenarioConfig& config)
{
    GroundTruthMap truth = [&] {
        try {
            return load_ground_truth(config.map_path);
        } catch (const MapIoError& e) {
            throw ConfigError(e.what());
        }
    }();
    return run(config, truth);
}

void write_metrics_csv(std::ostream& out, const RunMetrics& metrics)
{
    const std::size_t n = metrics.ticks.empty() ? 0 : metrics.ticks.front().robot_coverage.size();
    out << "time";
    for (std::size_t i = 0; i < n; ++i)
        out << ",coverage_r" << i;
    out << ",merged_coverage,raw_frontiers,filtered_frontiers,map_entropy,loop_closures\n";
    for (const auto& row : metrics.ticks) {
        fmt::print(out, "{:.6f}", row.time);
        for (const double c : row.robot_coverage)
            fmt::print(out, ",{:.6f}", c);
        fmt::print(out, ",{:.6f},{},{},{:.6f},{}\n", row.merged_coverage, row.raw_frontiers,
                   row.filtered_frontiers, row.map_entropy, row.loop_closures);
    }
}

void write_summary_csv(std::ostream& out, const RunMetrics& metrics)
{
    out << "method,seed,final_time,final_coverage,mean_reduction,iterations,ssim,rmse,"
           "alignment_error,total_distance";
    for (std::size_t i = 0; i < metrics.distance.size(); ++i)
        out << ",distance_r" << i;
    out << '\n';
    double total = 0.0;
    for (const double d : metrics.distance)
        total += d;
    fmt::print(out, "{},{},{:.6f},{:.6f},{:.6f},{},{:.6f},{:.6f},{:.6f},{:.6f}",
               method_name(metrics.method), metrics.seed,
               metrics.ticks.empty() ? 0.0 : metrics.ticks.back().time, metrics.final_coverage(),
               metrics.mean_reduction(), metrics.iterations.size(), metrics.quality.ssim,
               metrics.quality.rmse, metrics.quality.alignment_error, total);
    for (const double d : metrics.distance)
        fmt::print(out, ",{:.6f}", d);
    out << '\n';
}

} // namespace mrexplore
