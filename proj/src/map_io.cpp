#include "mrexplore/map_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace mrexplore {

namespace fs = std::filesystem;

namespace {

/* Next whitespace-delimited header token, skipping '#' comments */
std::string next_token(std::istream& in, const fs::path& path)
{
    std::string token;
    int ch = 0;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n')
                ;
            continue;
        }
        if (std::isspace(ch)) {
            if (!token.empty())
                return token;
            continue;
        }
        token.push_back(static_cast<char>(ch));
    }
    if (token.empty())
        throw MapIoError("truncated PGM header in " + path.string());
    return token;
}

int parse_positive(const std::string& token, const fs::path& path)
{
    try {
        std::size_t used = 0;
        const int value = std::stoi(token, &used);
        if (used == token.size() && value > 0)
            return value;
    } catch (const std::exception&) {
    }
    throw MapIoError("invalid PGM header value '" + token + "' in " + path.string());
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

} // namespace

fs::path metadata_path_for(const fs::path& pgm_path)
{
    fs::path meta = pgm_path;
    meta.replace_extension(".meta");
    return meta;
}

GrayImage read_pgm(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MapIoError("cannot open map image " + path.string());

    const std::string magic = next_token(in, path);
    if (magic != "P2" && magic != "P5")
        throw MapIoError("unsupported PGM format '" + magic + "' in " + path.string());
    const int width = parse_positive(next_token(in, path), path);
    const int height = parse_positive(next_token(in, path), path);
    const int maxval = parse_positive(next_token(in, path), path);
    if (maxval > 255)
        throw MapIoError("only 8-bit PGM images are supported: " + path.string());

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> file_order(count);
    if (magic == "P5") {
        in.read(reinterpret_cast<char*>(file_order.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            throw MapIoError("truncated PGM pixel data in " + path.string());
    } else {
        for (auto& px : file_order) {
            int value = 0;
            if (!(in >> value) || value < 0 || value > maxval)
                throw MapIoError("invalid ASCII pixel in " + path.string());
            px = static_cast<std::uint8_t>(value);
        }
    }

    GrayImage img{width, height, std::vector<std::uint8_t>(count)};
    for (int r = 0; r < height; ++r) {
        const auto src = file_order.begin() + static_cast<std::ptrdiff_t>(r) * width;
        const auto dst = img.pixels.begin() + static_cast<std::ptrdiff_t>(height - 1 - r) * width;
        std::copy(src, src + width, dst);
    }
    return img;
}

void write_pgm(const fs::path& path, const GrayImage& image)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw MapIoError("cannot write map image " + path.string());
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    for (int r = image.height - 1; r >= 0; --r)
        out.write(reinterpret_cast<const char*>(image.pixels.data()) +
                      static_cast<std::ptrdiff_t>(r) * image.width,
                  image.width);
    if (!out)
        throw MapIoError("failed writing map image " + path.string());
}

MapMetadata read_metadata(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw MapIoError("cannot open map metadata " + path.string());

    MapMetadata meta;
    bool have_resolution = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto sep = line.find_first_of(":=");
        if (sep == std::string::npos)
            throw MapIoError(fmt::format("{}:{}: expected 'key: value'", path.string(), line_no));
        const std::string key = trim(line.substr(0, sep));
        const std::string value = trim(line.substr(sep + 1));
        try {
            if (key == "resolution") {
                meta.resolution = std::stod(value);
                have_resolution = true;
            } else if (key == "origin_x") {
                meta.origin_x = std::stod(value);
            } else if (key == "origin_y") {
                meta.origin_y = std::stod(value);
            } else if (key == "occupied_threshold") {
                meta.occupied_threshold = std::stoi(value);
            } else if (key == "free_threshold") {
                meta.free_threshold = std::stoi(value);
            } else {
                throw MapIoError(fmt::format("{}:{}: unknown key '{}'", path.string(), line_no, key));
            }
        } catch (const std::logic_error&) {
            throw MapIoError(fmt::format("{}:{}: invalid value '{}'", path.string(), line_no, value));
        }
    }
    if (!have_resolution || !(meta.resolution > 0.0))
        throw MapIoError("map metadata needs a positive resolution: " + path.string());
    if (meta.occupied_threshold > meta.free_threshold)
        throw MapIoError("occupied_threshold exceeds free_threshold in " + path.string());
    return meta;
}

void write_metadata(const fs::path& path, const MapMetadata& meta)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw MapIoError("cannot write map metadata " + path.string());
    out << fmt::format("resolution: {}\norigin_x: {}\norigin_y: {}\n"
                       "occupied_threshold: {}\nfree_threshold: {}\n",
                       meta.resolution, meta.origin_x, meta.origin_y,
                       meta.occupied_threshold, meta.free_threshold);
}

OccupancyGrid image_to_grid(const GrayImage& image, const MapMetadata& meta,
                            const ClassProbabilities& probs)
{
    OccupancyGrid grid(GridFrame{meta.resolution, meta.origin_x, meta.origin_y,
                                 image.width, image.height},
                       probs);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const int px = image.pixels[i];
        if (px < meta.occupied_threshold)
            grid.set_state(i, CellState::Occupied);
        else if (px > meta.free_threshold)
            grid.set_state(i, CellState::Free);
    }
    return grid;
}

OccupancyGrid load_occupancy_grid(const fs::path& pgm_path, const ClassProbabilities& probs)
{
    const GrayImage image = read_pgm(pgm_path);
    return image_to_grid(image, read_metadata(metadata_path_for(pgm_path)), probs);
}

GroundTruthMap load_ground_truth(const fs::path& pgm_path)
{
    const OccupancyGrid grid = load_occupancy_grid(pgm_path);
    std::vector<std::uint8_t> occupied(grid.frame().cell_count());
    for (std::size_t i = 0; i < occupied.size(); ++i)
        occupied[i] = grid.state(i) == CellState::Free ? 0 : 1;
    return GroundTruthMap(grid.frame(), std::move(occupied));
}

void save_occupancy_grid(const fs::path& pgm_path, const OccupancyGrid& grid)
{
    write_pgm(pgm_path, render_grayscale(grid));
    MapMetadata meta;
    meta.resolution = grid.resolution();
    meta.origin_x = grid.frame().origin_x;
    meta.origin_y = grid.frame().origin_y;
    write_metadata(metadata_path_for(pgm_path), meta);
}

} // namespace mrexplore
