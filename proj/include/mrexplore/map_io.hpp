#ifndef MREXPLORE_MAP_IO_HPP
#define MREXPLORE_MAP_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "mrexplore/grid_map.hpp"
#include "mrexplore/map_quality.hpp"

namespace mrexplore {

class MapIoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/* Sidecar metadata stored next to a PGM map as "key: value" lines.
 * Pixels below occupied_threshold are Occupied, above free_threshold Free,
 * anything in between Unknown. */
struct MapMetadata
{
    double resolution = 0.1;
    double origin_x = 0.0;
    double origin_y = 0.0;
    int occupied_threshold = 50;
    int free_threshold = 200;
};

/* Path of the sidecar metadata file for a map image (extension ".meta") */
std::filesystem::path metadata_path_for(const std::filesystem::path& pgm_path);

/* Reads P2 or P5 images with maxval <= 255. Image row 0 of the file is the
 * top of the map; the returned image uses grid order (row 0 at the bottom). */
GrayImage read_pgm(const std::filesystem::path& path);
/* Writes a binary P5 image, flipping rows back to file order */
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

MapMetadata read_metadata(const std::filesystem::path& path);
void write_metadata(const std::filesystem::path& path, const MapMetadata& meta);

OccupancyGrid image_to_grid(const GrayImage& image, const MapMetadata& meta,
                            const ClassProbabilities& probs = {});

/* Loads a map image and its sidecar metadata */
OccupancyGrid load_occupancy_grid(const std::filesystem::path& pgm_path,
                                  const ClassProbabilities& probs = {});
/* Same as load_occupancy_grid but Unknown pixels become obstacles */
GroundTruthMap load_ground_truth(const std::filesystem::path& pgm_path);

/* Writes the grid as a 0/128/255 P5 image plus sidecar metadata */
void save_occupancy_grid(const std::filesystem::path& pgm_path, const OccupancyGrid& grid);

} // namespace mrexplore

#endif // MREXPLORE_MAP_IO_HPP
