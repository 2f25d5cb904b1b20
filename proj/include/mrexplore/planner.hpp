#ifndef MREXPLORE_PLANNER_HPP
#define MREXPLORE_PLANNER_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "mrexplore/geometry.hpp"
#include "mrexplore/grid_map.hpp"

namespace mrexplore {

class PlanningError : public std::runtime_error
{
public:
    PlanningError() : std::runtime_error("no path") { }
};

/* Ordered 8-connected cell sequence from start to goal */
struct GridPath
{
    std::vector<Cell> cells;
    double length_m = 0.0;
    GridFrame frame;

    /* Cell centers in world coordinates */
    std::vector<Point2> waypoints() const;
};

struct PlannerOptions
{
    /* Cells within this Chebyshev distance of an Occupied cell are kept
     * off-limits, except as the final cell of a path or near the start. */
    int inflation = 1;
};

/* Single-source Dijkstra labels over the grid. Axis steps cost one
 * resolution, diagonal steps sqrt(2) resolutions; Unknown cells cost the
 * same as Free ones, Occupied cells are never entered and diagonal moves
 * may not cut an Occupied corner. Ties are broken by (cost, row, col). */
class DistanceField
{
public:
    DistanceField(const OccupancyGrid& grid, Cell start, const PlannerOptions& options = {});

    Cell start() const { return start_; }
    bool reachable(Cell c) const;
    /* Path cost in meters; infinity when unreachable */
    double cost(Cell c) const;
    std::optional<GridPath> path_to(Cell goal) const;

private:
    GridFrame frame_;
    Cell start_;
    std::vector<int> axis_steps_;
    std::vector<int> diagonal_steps_;
    std::vector<std::int64_t> parent_;
};

/* Cells that must not be expanded for a search from start */
std::vector<std::uint8_t> inflation_mask(const OccupancyGrid& grid, int inflation);

/* Shortest path between the cells containing start and goal. Throws
 * std::invalid_argument when start is outside the map or Occupied and
 * PlanningError when the goal cannot be reached. */
GridPath plan(const OccupancyGrid& grid, Point2 start, Point2 goal,
              const PlannerOptions& options = {});

/* Advances speed * dt meters along the polyline of cell centers from the
 * projection of pose onto it. Heading follows the segment being travelled;
 * at the end of the path the pose snaps to the goal cell center. */
Pose2 step_along(const GridPath& path, const Pose2& pose, double speed, double dt);

/* Polyline length from the projection of p to the end of the path */
double remaining_length(const GridPath& path, Point2 p);

} // namespace mrexplore

#endif // MREXPLORE_PLANNER_HPP
