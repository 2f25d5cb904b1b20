#ifndef MREXPLORE_GEOMETRY_HPP
#define MREXPLORE_GEOMETRY_HPP

#include <cmath>
#include <compare>
#include <cstdint>

namespace mrexplore {

using AgentId = std::uint32_t;

/* Point in the shared world frame (meters) */
struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/* Robot pose in the world frame, heading in radians */
struct Pose2
{
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;

    Point2 position() const { return {x, y}; }

    friend bool operator==(const Pose2&, const Pose2&) = default;
};

/* Integer grid coordinates; col grows with x, row grows with y */
struct Cell
{
    int col = 0;
    int row = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    /* Row-major ordering, used for deterministic tie-breaking */
    friend auto operator<=>(const Cell& a, const Cell& b)
    {
        if (auto c = a.row <=> b.row; c != 0)
            return c;
        return a.col <=> b.col;
    }
};

inline double distance(const Point2& a, const Point2& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double wrap_angle(double a)
{
    return std::remainder(a, 2.0 * M_PI);
}

} // namespace mrexplore

#endif // MREXPLORE_GEOMETRY_HPP
