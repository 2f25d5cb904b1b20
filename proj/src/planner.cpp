#include "mrexplore/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace mrexplore {

std::vector<Point2> GridPath::waypoints() const
{
    std::vector<Point2> pts;
    pts.reserve(cells.size());
    for (const Cell c : cells)
        pts.push_back(grid_to_world(c, frame));
    return pts;
}

std::vector<std::uint8_t> inflation_mask(const OccupancyGrid& grid, int inflation)
{
    const GridFrame& f = grid.frame();
    std::vector<std::uint8_t> mask(f.cell_count(), 0);
    if (inflation <= 0)
        return mask;
    for (int row = 0; row < f.height; ++row) {
        for (int col = 0; col < f.width; ++col) {
            if (grid.state(Cell{col, row}) != CellState::Occupied)
                continue;
            for (int dr = -inflation; dr <= inflation; ++dr) {
                for (int dc = -inflation; dc <= inflation; ++dc) {
                    const Cell n{col + dc, row + dr};
                    if (f.contains(n) && grid.state(n) != CellState::Occupied)
                        mask[f.index(n)] = 1;
                }
            }
        }
    }
    return mask;
}

namespace {

double step_cost(int axis, int diagonal, double res)
{
    return (static_cast<double>(axis) + static_cast<double>(diagonal) * M_SQRT2) * res;
}

} // namespace

DistanceField::DistanceField(const OccupancyGrid& grid, Cell start, const PlannerOptions& options) :
    frame_(grid.frame()), start_(start)
{
    if (!frame_.contains(start))
        throw std::invalid_argument("planner start lies outside the map");
    if (grid.state(start) == CellState::Occupied)
        throw std::invalid_argument("planner start lies in an occupied cell");

    const std::size_t n = frame_.cell_count();
    axis_steps_.assign(n, -1);
    diagonal_steps_.assign(n, -1);
    parent_.assign(n, -1);

    const auto inflated = inflation_mask(grid, options.inflation);
    const auto occupied = [&](Cell c) {
        return !frame_.contains(c) || grid.state(c) == CellState::Occupied;
    };
    const auto expandable = [&](Cell c) {
        if (!inflated[frame_.index(c)])
            return true;
        return std::max(std::abs(c.col - start.col), std::abs(c.row - start.row)) <=
               options.inflation;
    };

    using Entry = std::tuple<double, int, int>; // cost, row, col
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::vector<std::uint8_t> closed(n, 0);

    const std::size_t s = frame_.index(start);
    axis_steps_[s] = 0;
    diagonal_steps_[s] = 0;
    open.emplace(0.0, start.row, start.col);

    while (!open.empty()) {
        const auto [cost, row, col] = open.top();
        open.pop();
        const Cell u{col, row};
        const std::size_t ui = frame_.index(u);
        if (closed[ui])
            continue;
        closed[ui] = 1;
        if (!expandable(u))
            continue;

        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0)
                    continue;
                const Cell v{col + dc, row + dr};
                if (occupied(v))
                    continue;
                const bool diagonal = dr != 0 && dc != 0;
                if (diagonal && (occupied({col + dc, row}) || occupied({col, row + dr})))
                    continue;
                const std::size_t vi = frame_.index(v);
                if (closed[vi])
                    continue;
                const int a = axis_steps_[ui] + (diagonal ? 0 : 1);
                const int d = diagonal_steps_[ui] + (diagonal ? 1 : 0);
                const double candidate = step_cost(a, d, frame_.resolution);
                if (axis_steps_[vi] >= 0 &&
                    step_cost(axis_steps_[vi], diagonal_steps_[vi], frame_.resolution) <= candidate)
                    continue;
                axis_steps_[vi] = a;
                diagonal_steps_[vi] = d;
                parent_[vi] = static_cast<std::int64_t>(ui);
                open.emplace(candidate, v.row, v.col);
            }
        }
    }
}

bool DistanceField::reachable(Cell c) const
{
    return frame_.contains(c) && axis_steps_[frame_.index(c)] >= 0;
}

double DistanceField::cost(Cell c) const
{
    if (!reachable(c))
        return std::numeric_limits<double>::infinity();
    const std::size_t i = frame_.index(c);
    return step_cost(axis_steps_[i], diagonal_steps_[i], frame_.resolution);
}

std::optional<GridPath> DistanceField::path_to(Cell goal) const
{
    if (!reachable(goal))
        return std::nullopt;
    GridPath path;
    path.frame = frame_;
    path.length_m = cost(goal);
    for (std::int64_t i = static_cast<std::int64_t>(frame_.index(goal)); i >= 0; i = parent_[i])
        path.cells.push_back(frame_.cell_at(static_cast<std::size_t>(i)));
    std::reverse(path.cells.begin(), path.cells.end());
    return path;
}

GridPath plan(const OccupancyGrid& grid, Point2 start, Point2 goal, const PlannerOptions& options)
{
    const DistanceField field(grid, world_to_grid(start, grid.frame()), options);
    auto path = field.path_to(world_to_grid(goal, grid.frame()));
    if (!path)
        throw PlanningError();
    return std::move(*path);
}

namespace {

struct Projection
{
    std::size_t segment = 0;
    double arc = 0.0;
};

/* Cumulative arc length at each waypoint */
std::vector<double> arc_lengths(const std::vector<Point2>& pts)
{
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
    return cum;
}

Projection project(const std::vector<Point2>& pts, const std::vector<double>& cum, Point2 p)
{
    Projection best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double sx = pts[i + 1].x - pts[i].x;
        const double sy = pts[i + 1].y - pts[i].y;
        const double len_sq = sx * sx + sy * sy;
        double t = 0.0;
        if (len_sq > 0.0)
            t = std::clamp(((p.x - pts[i].x) * sx + (p.y - pts[i].y) * sy) / len_sq, 0.0, 1.0);
        const Point2 q{pts[i].x + t * sx, pts[i].y + t * sy};
        const double d = distance(p, q);
        if (d < best_d) {
            best_d = d;
            best = {i, cum[i] + t * std::sqrt(len_sq)};
        }
    }
    return best;
}

} // namespace

double remaining_length(const GridPath& path, Point2 p)
{
    const auto pts = path.waypoints();
    if (pts.size() < 2)
        return pts.empty() ? 0.0 : distance(p, pts.front());
    const auto cum = arc_lengths(pts);
    return cum.back() - project(pts, cum, p).arc;
}

Pose2 step_along(const GridPath& path, const Pose2& pose, double speed, double dt)
{
    const auto pts = path.waypoints();
    if (pts.empty())
        return pose;
    const Point2 goal = pts.back();
    if (pts.size() == 1)
        return {goal.x, goal.y, pose.heading};

    const auto cum = arc_lengths(pts);
    const double total = cum.back();
    const double target = project(pts, cum, pose.position()).arc + speed * dt;

    const double last_heading = std::atan2(goal.y - pts[pts.size() - 2].y,
                                           goal.x - pts[pts.size() - 2].x);
    if (target >= total)
        return {goal.x, goal.y, last_heading};

    /* Segment j with cum[j] <= target < cum[j + 1] */
    const auto it = std::upper_bound(cum.begin(), cum.end(), target);
    const std::size_t j = static_cast<std::size_t>(std::distance(cum.begin(), it)) - 1;
    const double seg = cum[j + 1] - cum[j];
    const double t = seg > 0.0 ? (target - cum[j]) / seg : 0.0;
    const Point2 a = pts[j];
    const Point2 b = pts[j + 1];
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), std::atan2(b.y - a.y, b.x - a.x)};
}

} // namespace mrexplore
