#include "mrexplore/lidar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrexplore {

double LidarScan::beam_angle(std::size_t beam) const
{
    return pose.heading + 2.0 * M_PI * static_cast<double>(beam) /
                              static_cast<double>(beam_count);
}

void traverse_ray(const GridFrame& frame, Point2 origin, double angle, double max_t,
                  const RayVisitor& visit)
{
    constexpr double inf = std::numeric_limits<double>::infinity();

    Cell c = world_to_grid(origin, frame);
    if (!frame.contains(c))
        return;

    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
    const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
    const double res = frame.resolution;

    const double delta_x = step_x != 0 ? res / std::abs(dx) : inf;
    const double delta_y = step_y != 0 ? res / std::abs(dy) : inf;

    double next_x = inf;
    if (step_x != 0) {
        const double boundary = frame.origin_x + (c.col + (step_x > 0 ? 1 : 0)) * res;
        next_x = std::max(0.0, (boundary - origin.x) / dx);
    }
    double next_y = inf;
    if (step_y != 0) {
        const double boundary = frame.origin_y + (c.row + (step_y > 0 ? 1 : 0)) * res;
        next_y = std::max(0.0, (boundary - origin.y) / dy);
    }

    if (!visit(c, 0.0))
        return;

    while (true) {
        double t = 0.0;
        const double tie_tol = 1e-12 * (1.0 + std::min(next_x, next_y));
        if (std::abs(next_x - next_y) <= tie_tol) {
            t = next_x;
            if (t > max_t)
                return;
            /* Exact corner crossing: visit both side cells */
            const Cell side_x{c.col + step_x, c.row};
            const Cell side_y{c.col, c.row + step_y};
            if (frame.contains(side_x) && !visit(side_x, t))
                return;
            if (frame.contains(side_y) && !visit(side_y, t))
                return;
            c = {c.col + step_x, c.row + step_y};
            next_x += delta_x;
            next_y += delta_y;
        } else if (next_x < next_y) {
            t = next_x;
            c.col += step_x;
            next_x += delta_x;
        } else {
            t = next_y;
            c.row += step_y;
            next_y += delta_y;
        }
        if (t > max_t || !frame.contains(c))
            return;
        if (!visit(c, t))
            return;
    }
}

LidarScan raycast(const GroundTruthMap& truth, const Pose2& pose, int beam_count,
                  double max_range)
{
    if (beam_count <= 0)
        throw std::invalid_argument("beam_count must be positive");
    if (!(max_range > 0.0))
        throw std::invalid_argument("max_range must be positive");

    const GridFrame& frame = truth.frame();
    const Cell start = world_to_grid(pose.position(), frame);
    if (!frame.contains(start))
        throw std::invalid_argument("robot pose outside the map");
    if (truth.occupied(start))
        throw std::invalid_argument("robot embedded in obstacle");

    LidarScan scan;
    scan.beam_count = beam_count;
    scan.max_range = max_range;
    scan.pose = pose;
    scan.ranges.assign(static_cast<std::size_t>(beam_count), scan.no_hit());

    for (std::size_t b = 0; b < scan.ranges.size(); ++b) {
        double& range = scan.ranges[b];
        traverse_ray(frame, pose.position(), scan.beam_angle(b), max_range,
                     [&](Cell c, double) {
                         if (!truth.occupied(c))
                             return true;
                         const double d = distance(pose.position(), grid_to_world(c, frame));
                         if (d <= max_range)
                             range = d;
                         return false;
                     });
    }
    return scan;
}

namespace {

struct Crossing
{
    Cell cell;
    double t_enter;
};

void mark_free(OccupancyGrid& grid, Cell c)
{
    if (grid.state(c) == CellState::Unknown)
        grid.set_state(c, CellState::Free);
}

} // namespace

void integrate_scan_inplace(OccupancyGrid& grid, const LidarScan& scan)
{
    const GridFrame& frame = grid.frame();
    const Point2 origin = scan.pose.position();
    std::vector<Crossing> crossings;

    for (std::size_t b = 0; b < scan.ranges.size(); ++b) {
        const double angle = scan.beam_angle(b);
        if (!scan.is_hit(b)) {
            /* A cell entered within range whose center lies beyond it may be
             * an obstacle the sensor did not report, so the sweep stops there */
            traverse_ray(frame, origin, angle, scan.max_range, [&](Cell c, double) {
                if (distance(origin, grid_to_world(c, frame)) > scan.max_range)
                    return false;
                mark_free(grid, c);
                return true;
            });
            continue;
        }

        const double range = scan.ranges[b];
        crossings.clear();
        traverse_ray(frame, origin, angle, range + frame.resolution, [&](Cell c, double t) {
            crossings.push_back({c, t});
            return true;
        });

        /* The hit cell is the crossed cell whose center lies at the measured
         * range; otherwise fall back to the cell containing the end point.
         * Several crossed cells at that distance (a beam through a corner
         * from a cell center) leave the hit ambiguous: only the cells before
         * them are cleared and the hit is left to other beams. */
        const double tol = 1e-9 * std::max(1.0, range);
        std::size_t hit = crossings.size();
        bool ambiguous = false;
        for (std::size_t k = 0; k < crossings.size(); ++k) {
            const double d = distance(origin, grid_to_world(crossings[k].cell, frame));
            if (std::abs(d - range) <= tol) {
                if (hit == crossings.size()) {
                    hit = k;
                } else {
                    ambiguous = true;
                    break;
                }
            }
        }
        if (ambiguous) {
            for (std::size_t k = 0; k < hit; ++k)
                mark_free(grid, crossings[k].cell);
            continue;
        }
        if (hit == crossings.size()) {
            const Cell end = world_to_grid(
                {origin.x + range * std::cos(angle), origin.y + range * std::sin(angle)}, frame);
            for (std::size_t k = 0; k < crossings.size(); ++k) {
                if (crossings[k].cell == end) {
                    hit = k;
                    break;
                }
            }
            if (hit == crossings.size()) {
                for (const auto& x : crossings)
                    if (x.t_enter < range)
                        mark_free(grid, x.cell);
                if (frame.contains(end))
                    grid.set_state(end, CellState::Occupied);
                continue;
            }
        }
        for (std::size_t k = 0; k < hit; ++k)
            mark_free(grid, crossings[k].cell);
        grid.set_state(crossings[hit].cell, CellState::Occupied);
    }
}

OccupancyGrid integrate_scan(OccupancyGrid grid, const LidarScan& scan)
{
    integrate_scan_inplace(grid, scan);
    return grid;
}

} // namespace mrexplore
