#ifndef MREXPLORE_MAP_QUALITY_HPP
#define MREXPLORE_MAP_QUALITY_HPP

#include <cstdint>
#include <vector>

#include "mrexplore/grid_map.hpp"

namespace mrexplore {

inline constexpr std::uint8_t kPixelOccupied = 0;
inline constexpr std::uint8_t kPixelUnknown = 128;
inline constexpr std::uint8_t kPixelFree = 255;

/* Single-channel image stored in grid index order (row 0 is the bottom row) */
struct GrayImage
{
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int col, int row) const
    {
        return pixels[static_cast<std::size_t>(col) +
                      static_cast<std::size_t>(row) * static_cast<std::size_t>(width)];
    }
    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

GrayImage render_grayscale(const OccupancyGrid& grid);
GrayImage render_grayscale(const GroundTruthMap& truth);

/* Mean structural similarity over all 7x7 windows (stride 1), constants
 * (0.01 * 255)^2 and (0.03 * 255)^2, clamped to [0, 1]. Images smaller
 * than the window use a single window covering the whole image. */
double ssim(const GrayImage& a, const GrayImage& b);

/* Root mean square pixel difference on the 0-255 scale */
double rmse(const GrayImage& a, const GrayImage& b);

/* Mean Euclidean distance (in cells) from every occupied cell of the
 * estimate to the nearest occupied cell of the reference. Zero when the
 * estimate has no occupied cells, infinity when only the reference is empty. */
double alignment_error(const GrayImage& estimate, const GrayImage& reference);

struct MapQuality
{
    double ssim = 0.0;
    double rmse = 0.0;
    double alignment_error = 0.0;
};

/* Throws std::invalid_argument on geometry mismatch */
MapQuality map_quality(const OccupancyGrid& grid, const GroundTruthMap& truth);

} // namespace mrexplore

#endif // MREXPLORE_MAP_QUALITY_HPP
