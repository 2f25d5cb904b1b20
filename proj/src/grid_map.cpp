#include "mrexplore/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mrexplore {

double ClassProbabilities::of(CellState state) const
{
    switch (state) {
    case CellState::Free:
        return free;
    case CellState::Occupied:
        return occupied;
    case CellState::Unknown:
        break;
    }
    return unknown;
}

void ClassProbabilities::validate() const
{
    for (double p : {unknown, free, occupied})
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("class probability outside [0, 1]: " +
                                        std::to_string(p));
}

void GridFrame::validate() const
{
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("grid width and height must be positive");
    if (!(resolution > 0.0) || !std::isfinite(resolution))
        throw std::invalid_argument("grid resolution must be positive");
    if (!std::isfinite(origin_x) || !std::isfinite(origin_y))
        throw std::invalid_argument("grid origin must be finite");
}

double GridFrame::diagonal() const
{
    return resolution * std::hypot(static_cast<double>(width), static_cast<double>(height));
}

Cell world_to_grid(Point2 p, const GridFrame& frame)
{
    return {static_cast<int>(std::floor((p.x - frame.origin_x) / frame.resolution)),
            static_cast<int>(std::floor((p.y - frame.origin_y) / frame.resolution))};
}

Point2 grid_to_world(Cell c, const GridFrame& frame)
{
    return {frame.origin_x + (c.col + 0.5) * frame.resolution,
            frame.origin_y + (c.row + 0.5) * frame.resolution};
}

OccupancyGrid::OccupancyGrid(const GridFrame& frame, const ClassProbabilities& probs,
                             CellState fill) :
    frame_(frame), probs_(probs)
{
    frame_.validate();
    probs_.validate();
    cells_.assign(frame_.cell_count(), fill);
}

std::size_t OccupancyGrid::count(CellState s) const
{
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), s));
}

GroundTruthMap::GroundTruthMap(const GridFrame& frame, std::vector<std::uint8_t> occupied) :
    frame_(frame), occupied_(std::move(occupied))
{
    frame_.validate();
    if (occupied_.size() != frame_.cell_count())
        throw std::invalid_argument("ground truth cell count does not match its geometry");
}

GroundTruthMap::GroundTruthMap(const GridFrame& frame) :
    GroundTruthMap(frame, std::vector<std::uint8_t>(frame.width > 0 && frame.height > 0
                                                        ? frame.cell_count()
                                                        : 0,
                                                    0))
{
}

OccupancyGrid GroundTruthMap::to_grid(const ClassProbabilities& probs) const
{
    OccupancyGrid grid(frame_, probs, CellState::Free);
    for (std::size_t i = 0; i < occupied_.size(); ++i)
        if (occupied_[i])
            grid.set_state(i, CellState::Occupied);
    return grid;
}

double cell_entropy(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("cell probability outside [0, 1]");
    auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
    return term(p) + term(1.0 - p);
}

double map_entropy(const OccupancyGrid& grid)
{
    const auto& probs = grid.class_probabilities();
    double total = 0.0;
    for (CellState s : {CellState::Unknown, CellState::Free, CellState::Occupied}) {
        const auto n = grid.count(s);
        if (n > 0)
            total += static_cast<double>(n) * cell_entropy(probs.of(s));
    }
    return total;
}

namespace {

int state_rank(CellState s)
{
    switch (s) {
    case CellState::Occupied:
        return 2;
    case CellState::Free:
        return 1;
    case CellState::Unknown:
        break;
    }
    return 0;
}

int aligned_offset(double from, double to, double resolution)
{
    const double cells = (from - to) / resolution;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-6)
        throw std::invalid_argument("grids are not cell-aligned in the shared frame");
    return static_cast<int>(rounded);
}

} // namespace

OccupancyGrid merge_maps(std::span<const OccupancyGrid> grids)
{
    if (grids.empty())
        throw std::invalid_argument("merge_maps needs at least one grid");

    const double res = grids.front().resolution();
    double min_x = grids.front().frame().origin_x;
    double min_y = grids.front().frame().origin_y;
    for (const auto& g : grids) {
        if (std::abs(g.resolution() - res) > 1e-12 * res)
            throw std::invalid_argument("cannot merge grids with different resolutions");
        min_x = std::min(min_x, g.frame().origin_x);
        min_y = std::min(min_y, g.frame().origin_y);
    }

    int width = 0;
    int height = 0;
    std::vector<Cell> offsets;
    offsets.reserve(grids.size());
    for (const auto& g : grids) {
        const Cell off{aligned_offset(g.frame().origin_x, min_x, res),
                       aligned_offset(g.frame().origin_y, min_y, res)};
        width = std::max(width, off.col + g.width());
        height = std::max(height, off.row + g.height());
        offsets.push_back(off);
    }

    const GridFrame frame{res, min_x, min_y, width, height};
    OccupancyGrid merged(frame, grids.front().class_probabilities());
    for (std::size_t k = 0; k < grids.size(); ++k) {
        const auto& g = grids[k];
        const Cell off = offsets[k];
        for (int row = 0; row < g.height(); ++row) {
            for (int col = 0; col < g.width(); ++col) {
                const CellState incoming = g.state(Cell{col, row});
                const Cell target{col + off.col, row + off.row};
                if (state_rank(incoming) > state_rank(merged.state(target)))
                    merged.set_state(target, incoming);
            }
        }
    }
    return merged;
}

double coverage_percent(const OccupancyGrid& grid, const GroundTruthMap& truth)
{
    if (!(grid.frame() == truth.frame()))
        throw std::invalid_argument("coverage_percent: grid and truth geometry differ");
    const std::size_t total = truth.frame().cell_count();
    const std::size_t known = total - grid.count(CellState::Unknown);
    return 100.0 * static_cast<double>(known) / static_cast<double>(total);
}

bool disc_fully_known(const OccupancyGrid& grid, Point2 p, double rad)
{
    const GridFrame& f = grid.frame();
    const Cell center = world_to_grid(p, f);
    const double rad_cells = rad / f.resolution;
    const int reach = static_cast<int>(std::ceil(rad_cells));
    for (int j = -reach; j <= reach; ++j) {
        for (int i = -reach; i <= reach; ++i) {
            if (i * i + j * j > rad_cells * rad_cells)
                continue;
            const Cell c{center.col + i, center.row + j};
            if (f.contains(c) && grid.state(c) == CellState::Unknown)
                return false;
        }
    }
    return true;
}

} // namespace mrexplore
