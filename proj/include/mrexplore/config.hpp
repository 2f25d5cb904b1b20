#ifndef MREXPLORE_CONFIG_HPP
#define MREXPLORE_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mrexplore/frontier.hpp"
#include "mrexplore/geometry.hpp"
#include "mrexplore/grid_map.hpp"
#include "mrexplore/planner.hpp"
#include "mrexplore/pose_graph.hpp"
#include "mrexplore/utility.hpp"

namespace mrexplore {

enum class Method
{
    Proposed,
    Mags,
    GreedyFrontier,
};

std::string_view method_name(Method m);
/* Throws ConfigError for unknown names */
Method parse_method(std::string_view name);

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig
{
    std::filesystem::path map_path;
    Method method = Method::Proposed;
    std::uint64_t seed = 1;
    double max_sim_time = 300.0;
    double dt = 0.5;
    double speed = 0.5;
    /* Start poses are perturbed by up to this many meters per axis, drawn
     * from the seed; zero keeps them exact */
    double start_jitter = 0.0;
    std::vector<Pose2> starts;

    int beam_count = 180;
    double max_range = 3.5;

    FilterParams filter;
    UtilityParams utility;
    GraphBuildParams graph;
    int goal_skip_wait = 5;
    ClassProbabilities probabilities;
    PlannerOptions planner;

    /* Range and consistency checks that do not need the map */
    void validate() const;
};

/* Parses an INI-style file: "[section]" headers, "key = value" lines and
 * '#' comments. The map path is resolved against the config's directory. */
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);

} // namespace mrexplore

#endif // MREXPLORE_CONFIG_HPP
