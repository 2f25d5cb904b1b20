#include "mrexplore/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace mrexplore {

void FilterParams::validate() const
{
    if (!(rad > 0.0))
        throw std::invalid_argument("filter rad must be positive");
    if (!(per_unk >= 0.0 && per_unk <= 100.0))
        throw std::invalid_argument("filter per_unk must lie in [0, 100]");
    if (min_pts < 0 || min_pts >= max_pts)
        throw std::invalid_argument("filter bounds need 0 <= min_pts < max_pts");
    if (!(rad_step > 0.0) || !(perc_step > 0.0))
        throw std::invalid_argument("filter steps must be positive");
}

namespace {

bool is_frontier_cell(const OccupancyGrid& grid, Cell c)
{
    if (grid.state(c) != CellState::Free)
        return false;
    constexpr Cell kAxis[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const Cell d : kAxis) {
        const Cell n{c.col + d.col, c.row + d.row};
        if (grid.contains(n) && grid.state(n) == CellState::Unknown)
            return true;
    }
    return false;
}

} // namespace

std::vector<FrontierPoint> detect_frontiers(const OccupancyGrid& grid, AgentId agent)
{
    const GridFrame& f = grid.frame();
    std::vector<std::uint8_t> frontier(f.cell_count(), 0);
    for (std::size_t i = 0; i < frontier.size(); ++i)
        frontier[i] = is_frontier_cell(grid, f.cell_at(i)) ? 1 : 0;

    std::vector<std::uint8_t> visited(f.cell_count(), 0);
    std::vector<FrontierPoint> points;
    std::vector<Cell> members;
    std::deque<Cell> queue;

    for (std::size_t seed = 0; seed < frontier.size(); ++seed) {
        if (!frontier[seed] || visited[seed])
            continue;
        members.clear();
        queue.push_back(f.cell_at(seed));
        visited[seed] = 1;
        while (!queue.empty()) {
            const Cell c = queue.front();
            queue.pop_front();
            members.push_back(c);
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const Cell n{c.col + dc, c.row + dr};
                    if ((dr == 0 && dc == 0) || !f.contains(n))
                        continue;
                    const std::size_t idx = f.index(n);
                    if (frontier[idx] && !visited[idx]) {
                        visited[idx] = 1;
                        queue.push_back(n);
                    }
                }
            }
        }

        double sum_col = 0.0;
        double sum_row = 0.0;
        for (const Cell c : members) {
            sum_col += c.col;
            sum_row += c.row;
        }
        const double mean_col = sum_col / static_cast<double>(members.size());
        const double mean_row = sum_row / static_cast<double>(members.size());

        Cell best = members.front();
        double best_d2 = std::numeric_limits<double>::infinity();
        for (const Cell c : members) {
            const double d2 = (c.col - mean_col) * (c.col - mean_col) +
                              (c.row - mean_row) * (c.row - mean_row);
            if (d2 < best_d2 || (d2 == best_d2 && c < best)) {
                best = c;
                best_d2 = d2;
            }
        }
        const Point2 p = grid_to_world(best, f);
        points.push_back({p.x, p.y, agent});
    }
    return points;
}

double unknown_percentage(Point2 p, const OccupancyGrid& merged, double rad)
{
    const GridFrame& f = merged.frame();
    const Cell center = world_to_grid(p, f);
    const double rad_cells = rad / f.resolution;
    const double rad_sq = rad_cells * rad_cells;
    const int reach = static_cast<int>(std::floor(rad_cells));

    std::size_t unknown = 0;
    std::size_t total = 0;
    for (int j = -reach; j <= reach; ++j) {
        for (int i = -reach; i <= reach; ++i) {
            if (static_cast<double>(i * i + j * j) > rad_sq)
                continue;
            const Cell c{center.col + i, center.row + j};
            if (!f.contains(c))
                continue;
            ++total;
            if (merged.state(c) == CellState::Unknown)
                ++unknown;
        }
    }
    if (total == 0)
        return -1.0;
    return 100.0 * static_cast<double>(unknown) / static_cast<double>(total);
}

bool is_near_border(const FrontierPoint& p, const OccupancyGrid& merged, double rad,
                    double per_unk)
{
    if (!(rad > 0.0))
        throw std::invalid_argument("is_near_border: rad must be positive");
    const double perc = unknown_percentage(p.position(), merged, rad);
    return perc >= 0.0 && perc >= per_unk;
}

namespace {

/* Set of linear cell keys; cells outside the map still get distinct keys */
class CellSet
{
public:
    explicit CellSet(const GridFrame& frame) : frame_(frame) { }

    bool insert(Point2 p)
    {
        const Cell c = world_to_grid(p, frame_);
        const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.row)) << 32) |
                         static_cast<std::uint32_t>(c.col);
        return keys_.insert(key).second;
    }

private:
    GridFrame frame_;
    std::unordered_set<std::uint64_t> keys_;
};

} // namespace

std::vector<FrontierPoint> filter_border_points(std::span<const FrontierPoint> points,
                                                const OccupancyGrid& merged, double rad,
                                                double per_unk)
{
    std::vector<FrontierPoint> out;
    CellSet seen(merged.frame());
    for (const auto& p : points) {
        if (!is_near_border(p, merged, rad, per_unk))
            continue;
        if (seen.insert(p.position()))
            out.push_back(p);
    }
    return out;
}

std::vector<FrontierPoint> concatenate(std::span<const std::vector<FrontierPoint>> lists)
{
    std::vector<FrontierPoint> all;
    for (const auto& l : lists)
        all.insert(all.end(), l.begin(), l.end());
    return all;
}

std::vector<FrontierPoint> deduplicate_by_cell(std::span<const FrontierPoint> points,
                                               const GridFrame& frame)
{
    std::vector<FrontierPoint> out;
    CellSet seen(frame);
    for (const auto& p : points)
        if (seen.insert(p.position()))
            out.push_back(p);
    return out;
}

std::vector<FrontierPoint> merge_points(std::span<const std::vector<FrontierPoint>> lists,
                                        const OccupancyGrid& merged,
                                        const FilterParams& params)
{
    const auto all = concatenate(lists);
    return filter_border_points(all, merged, params.rad, params.per_unk);
}

int list_bounds_iteration_limit(const FilterParams& params, const GridFrame& frame)
{
    return static_cast<int>(std::ceil(params.per_unk / params.perc_step)) +
           static_cast<int>(std::ceil(frame.diagonal() / params.rad_step));
}

BoundedList enforce_list_bounds(std::vector<FrontierPoint> uni_pts,
                                std::span<const FrontierPoint> raw_pts,
                                const OccupancyGrid& merged, const FilterParams& params)
{
    params.validate();
    const double rad_max = std::max(params.rad, merged.frame().diagonal());
    const auto too_small = [&](const auto& l) {
        return static_cast<int>(l.size()) <= params.min_pts;
    };
    const auto too_large = [&](const auto& l) {
        return static_cast<int>(l.size()) >= params.max_pts;
    };

    BoundedList result;
    result.points = std::move(uni_pts);
    result.final_rad = params.rad;
    result.final_perc = params.per_unk;

    /* Smallest oversized list seen; returned instead of an undersized list
     * when the clamps run out, so exhaustion never discards every candidate */
    std::optional<std::vector<FrontierPoint>> smallest_large;
    const auto note_large = [&](const std::vector<FrontierPoint>& l) {
        if (too_large(l) && (!smallest_large || l.size() < smallest_large->size()))
            smallest_large = l;
    };
    note_large(result.points);

    while (too_small(result.points) || too_large(result.points)) {
        if (too_small(result.points)) {
            if (result.final_perc <= 0.0) {
                result.exhausted = true;
                if (smallest_large)
                    result.points = std::move(*smallest_large);
                break;
            }
            result.final_perc = std::max(0.0, result.final_perc - params.perc_step);
            result.points = filter_border_points(raw_pts, merged, params.rad, result.final_perc);
        } else {
            if (result.final_rad >= rad_max) {
                result.exhausted = true;
                break;
            }
            result.final_rad = std::min(rad_max, result.final_rad + params.rad_step);
            const auto current = std::move(result.points);
            result.points = filter_border_points(current, merged, result.final_rad,
                                                 params.per_unk);
        }
        note_large(result.points);
        ++result.iterations;
    }
    return result;
}

} // namespace mrexplore
