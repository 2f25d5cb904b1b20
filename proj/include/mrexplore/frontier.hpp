#ifndef MREXPLORE_FRONTIER_HPP
#define MREXPLORE_FRONTIER_HPP

#include <span>
#include <vector>

#include "mrexplore/geometry.hpp"
#include "mrexplore/grid_map.hpp"

namespace mrexplore {

struct FrontierPoint
{
    double x = 0.0;
    double y = 0.0;
    AgentId source_agent = 0;

    Point2 position() const { return {x, y}; }
    friend bool operator==(const FrontierPoint&, const FrontierPoint&) = default;
};

/* Parameters of the border filter and of the list-size control loop */
struct FilterParams
{
    double rad = 1.0;        // disc radius, meters
    double per_unk = 60.0;   // minimum percentage of unknown cells in the disc
    int min_pts = 0;         // list must hold more than min_pts points
    int max_pts = 10;        // and fewer than max_pts points
    double rad_step = 0.25;  // radius increment when the list is too long
    double perc_step = 10.0; // threshold decrement when the list is too short

    void validate() const;
};

/* Free cells 4-adjacent to an Unknown cell, grouped into 8-connected
 * clusters. One point per cluster, placed on the member cell nearest to the
 * cluster centroid. Clusters are ordered by the (row, col) of their first
 * cell in row-major scan order. */
std::vector<FrontierPoint> detect_frontiers(const OccupancyGrid& grid, AgentId agent = 0);

/* Percentage of Unknown cells among the in-bounds cells of the discretized
 * disc of radius rad around p. Offset (i, j) belongs to the disc iff
 * i^2 + j^2 <= (rad / resolution)^2. Returns a negative value when no disc
 * cell is inside the map. */
double unknown_percentage(Point2 p, const OccupancyGrid& merged, double rad);

/* True iff the unknown percentage around p is at least per_unk */
bool is_near_border(const FrontierPoint& p, const OccupancyGrid& merged, double rad,
                    double per_unk);

/* Order-preserving border filter with cell-granularity de-duplication,
 * using explicit radius and threshold */
std::vector<FrontierPoint> filter_border_points(std::span<const FrontierPoint> points,
                                                const OccupancyGrid& merged, double rad,
                                                double per_unk);

/* Concatenates the per-agent lists and keeps the unique border points */
std::vector<FrontierPoint> merge_points(std::span<const std::vector<FrontierPoint>> lists,
                                        const OccupancyGrid& merged,
                                        const FilterParams& params);

/* Flattens per-agent lists in agent order */
std::vector<FrontierPoint> concatenate(std::span<const std::vector<FrontierPoint>> lists);

/* Removes later points that share a grid cell with an earlier one */
std::vector<FrontierPoint> deduplicate_by_cell(std::span<const FrontierPoint> points,
                                               const GridFrame& frame);

struct BoundedList
{
    std::vector<FrontierPoint> points;
    double final_rad = 0.0;
    double final_perc = 0.0;
    int iterations = 0;
    /* Set when a clamp stopped the loop with the list still out of bounds */
    bool exhausted = false;
};

/* Upper bound on the loop iterations of enforce_list_bounds */
int list_bounds_iteration_limit(const FilterParams& params, const GridFrame& frame);

/* List-size control. While the list has <= min_pts points the raw list is
 * re-filtered with the threshold lowered by perc_step (floored at 0); while
 * it has >= max_pts points the current list is re-filtered with the radius
 * raised by rad_step (capped at the map diagonal). When the threshold is
 * exhausted with the list still too short, the smallest oversized list
 * produced along the way is returned instead (flagged exhausted). */
BoundedList enforce_list_bounds(std::vector<FrontierPoint> uni_pts,
                                std::span<const FrontierPoint> raw_pts,
                                const OccupancyGrid& merged, const FilterParams& params);

} // namespace mrexplore

#endif // MREXPLORE_FRONTIER_HPP
