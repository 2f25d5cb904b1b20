#ifndef MREXPLORE_LIDAR_HPP
#define MREXPLORE_LIDAR_HPP

#include <functional>
#include <vector>

#include "mrexplore/geometry.hpp"
#include "mrexplore/grid_map.hpp"

namespace mrexplore {

/* Planar 360 degree range scan. Beam i points along
 * pose.heading + 2 pi i / beam_count. */
struct LidarScan
{
    int beam_count = 0;
    double max_range = 0.0;
    Pose2 pose;
    std::vector<double> ranges;

    /* Range value encoding "no hit within max_range" */
    double no_hit() const { return max_range + 1.0; }
    bool is_hit(std::size_t beam) const { return ranges[beam] <= max_range; }
    double beam_angle(std::size_t beam) const;
};

/* Called for each cell crossed by a ray, in order, with the ray parameter
 * at which the cell is entered. Return false to stop the traversal. */
using RayVisitor = std::function<bool(Cell, double)>;

/* Exact grid traversal of the ray origin + t (cos a, sin a), t in [0, max_t].
 * Every cell the ray passes through is visited; when the ray crosses a cell
 * corner exactly, both side cells are visited before the diagonal one.
 * Traversal stops at the map boundary. */
void traverse_ray(const GridFrame& frame, Point2 origin, double angle, double max_t,
                  const RayVisitor& visit);

/* Noise-free simulated scan against the ground truth. Ranges are the
 * distance to the center of the first occupied cell on each beam.
 * Throws std::invalid_argument("robot embedded in obstacle") when the pose
 * lies in an occupied cell, or when it lies outside the map. */
LidarScan raycast(const GroundTruthMap& truth, const Pose2& pose, int beam_count,
                  double max_range);

/* Marks cells along each beam Free and the hit cell Occupied. The hit cell
 * is the crossed cell whose center lies at the measured range; when two
 * crossed cells tie on that distance neither is classified. Occupied cells
 * are never changed back to Free or Unknown. */
OccupancyGrid integrate_scan(OccupancyGrid grid, const LidarScan& scan);

/* In-place variant used by the simulator loop */
void integrate_scan_inplace(OccupancyGrid& grid, const LidarScan& scan);

} // namespace mrexplore

#endif // MREXPLORE_LIDAR_HPP
