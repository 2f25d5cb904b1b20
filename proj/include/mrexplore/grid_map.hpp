#ifndef MREXPLORE_GRID_MAP_HPP
#define MREXPLORE_GRID_MAP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mrexplore/geometry.hpp"

namespace mrexplore {

enum class CellState : std::uint8_t
{
    Unknown = 0,
    Free = 1,
    Occupied = 2,
};

/* Occupancy probability assigned to each cell class */
struct ClassProbabilities
{
    double unknown = 0.5;
    double free = 0.05;
    double occupied = 0.95;

    double of(CellState state) const;
    /* Throws std::invalid_argument if any value lies outside [0, 1] */
    void validate() const;

    friend bool operator==(const ClassProbabilities&,
                           const ClassProbabilities&) = default;
};

/* Geometry shared by every grid: resolution, origin of cell (0, 0) and
 * extent. Linear index of (col, row) is col + row * width. */
struct GridFrame
{
    double resolution = 0.1;
    double origin_x = 0.0;
    double origin_y = 0.0;
    int width = 0;
    int height = 0;

    void validate() const;

    bool contains(Cell c) const
    {
        return c.col >= 0 && c.row >= 0 && c.col < width && c.row < height;
    }
    std::size_t index(Cell c) const
    {
        return static_cast<std::size_t>(c.col) +
               static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width);
    }
    Cell cell_at(std::size_t idx) const
    {
        return {static_cast<int>(idx % static_cast<std::size_t>(width)),
                static_cast<int>(idx / static_cast<std::size_t>(width))};
    }
    std::size_t cell_count() const
    {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    /* Length of the map diagonal in meters */
    double diagonal() const;

    friend bool operator==(const GridFrame&, const GridFrame&) = default;
};

/* floor((p - origin) / resolution); out-of-bounds cells are returned as-is */
Cell world_to_grid(Point2 p, const GridFrame& frame);
/* Center of the cell in world coordinates */
Point2 grid_to_world(Cell c, const GridFrame& frame);

/* Tri-state occupancy grid. Cell probabilities follow the cell class. */
class OccupancyGrid
{
public:
    explicit OccupancyGrid(const GridFrame& frame,
                           const ClassProbabilities& probs = {},
                           CellState fill = CellState::Unknown);

    const GridFrame& frame() const { return frame_; }
    const ClassProbabilities& class_probabilities() const { return probs_; }
    int width() const { return frame_.width; }
    int height() const { return frame_.height; }
    double resolution() const { return frame_.resolution; }

    bool contains(Cell c) const { return frame_.contains(c); }

    CellState state(Cell c) const { return cells_[frame_.index(c)]; }
    CellState state(std::size_t idx) const { return cells_[idx]; }
    void set_state(Cell c, CellState s) { cells_[frame_.index(c)] = s; }
    void set_state(std::size_t idx, CellState s) { cells_[idx] = s; }

    double probability(Cell c) const { return probs_.of(state(c)); }
    double probability(std::size_t idx) const { return probs_.of(cells_[idx]); }

    bool is_known(Cell c) const { return state(c) != CellState::Unknown; }

    std::span<const CellState> cells() const { return cells_; }
    std::size_t count(CellState s) const;

    friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

private:
    GridFrame frame_;
    ClassProbabilities probs_;
    std::vector<CellState> cells_;
};

/* Binary simulation world: every cell is either free or occupied */
class GroundTruthMap
{
public:
    GroundTruthMap(const GridFrame& frame, std::vector<std::uint8_t> occupied);
    explicit GroundTruthMap(const GridFrame& frame);

    const GridFrame& frame() const { return frame_; }
    bool occupied(Cell c) const { return occupied_[frame_.index(c)] != 0; }
    bool occupied(std::size_t idx) const { return occupied_[idx] != 0; }
    void set_occupied(Cell c, bool value) { occupied_[frame_.index(c)] = value ? 1 : 0; }
    /* Out-of-bounds cells count as occupied */
    bool blocked(Cell c) const { return !frame_.contains(c) || occupied(c); }

    /* Fully known occupancy grid rendering of the truth */
    OccupancyGrid to_grid(const ClassProbabilities& probs = {}) const;

private:
    GridFrame frame_;
    std::vector<std::uint8_t> occupied_;
};

/* Shannon entropy of a Bernoulli cell in bits; 0 log 0 := 0.
 * Throws std::domain_error if p is outside [0, 1]. */
double cell_entropy(double p);

/* Sum of cell entropies over the whole grid */
double map_entropy(const OccupancyGrid& grid);

/* Cell-wise fusion on the union bounding box. Occupied wins over Free,
 * any known state wins over Unknown. All grids must share a resolution
 * and be cell-aligned in the common world frame. */
OccupancyGrid merge_maps(std::span<const OccupancyGrid> grids);

/* Percentage of truth cells that are known in the grid */
double coverage_percent(const OccupancyGrid& grid, const GroundTruthMap& truth);

/* True when every in-bounds cell of the disc of radius rad around p is known */
bool disc_fully_known(const OccupancyGrid& grid, Point2 p, double rad);

} // namespace mrexplore

#endif // MREXPLORE_GRID_MAP_HPP
