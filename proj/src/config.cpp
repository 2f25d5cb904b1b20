#include "mrexplore/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace mrexplore {

namespace pt = boost::property_tree;

std::string_view method_name(Method m)
{
    switch (m) {
    case Method::Proposed:
        return "proposed";
    case Method::Mags:
        return "mags";
    case Method::GreedyFrontier:
        return "greedy_frontier";
    }
    return "?";
}

Method parse_method(std::string_view name)
{
    for (Method m : {Method::Proposed, Method::Mags, Method::GreedyFrontier})
        if (method_name(m) == name)
            return m;
    throw ConfigError(fmt::format("unknown method '{}' (expected proposed, mags or greedy_frontier)",
                                  name));
}

void ScenarioConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw ConfigError(what);
    };
    require(!map_path.empty(), "scenario.map is required");
    require(max_sim_time > 0.0, "scenario.max_sim_time must be positive");
    require(dt > 0.0, "scenario.dt must be positive");
    require(speed > 0.0, "scenario.speed must be positive");
    require(start_jitter >= 0.0, "scenario.start_jitter must be non-negative");
    require(!starts.empty(), "robots.count must be at least 1");
    require(beam_count > 0, "lidar.beams must be positive");
    require(max_range > 0.0, "lidar.max_range must be positive");
    require(goal_skip_wait >= 0, "server.goal_skip_wait must be non-negative");
    require(planner.inflation >= 0, "planner.inflation must be non-negative");
    try {
        filter.validate();
        utility.validate();
        graph.validate();
        probabilities.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

namespace {

std::string strip_comments(std::string_view text)
{
    std::string out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        out += line;
        out += '\n';
    }
    return out;
}

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys = {
        {"scenario", {"map", "method", "seed", "max_sim_time", "dt", "speed", "start_jitter"}},
        {"robots", {"count"}},
        {"lidar", {"beams", "max_range"}},
        {"filter", {"per_unk", "rad", "min_pts", "max_pts", "rad_step", "perc_step"}},
        {"utility", {"lambda", "tree_weight", "u2_weight"}},
        {"graph", {"node_spacing", "loop_closure_radius", "odometry_weight", "loop_weight"}},
        {"server", {"goal_skip_wait"}},
        {"map", {"p_unknown", "p_free", "p_occupied"}},
        {"planner", {"inflation"}},
    };
    return keys;
}

template <typename T>
T get(const pt::ptree& tree, const std::string& key, T fallback)
{
    const auto node = tree.get_child_optional(pt::ptree::path_type(key, '.'));
    if (!node)
        return fallback;
    const std::string raw = boost::trim_copy(node->data());
    std::istringstream in(raw);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof())
        throw ConfigError(fmt::format("invalid value '{}' for {}", raw, key));
    return value;
}

Pose2 parse_pose(const std::string& key, const std::string& raw)
{
    std::vector<std::string> parts;
    boost::split(parts, raw, boost::is_any_of(","));
    if (parts.size() != 2 && parts.size() != 3)
        throw ConfigError(fmt::format("{} must be 'x, y' or 'x, y, heading'", key));
    double v[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::istringstream in(boost::trim_copy(parts[i]));
        in >> v[i];
        if (in.fail() || !(in >> std::ws).eof() || !std::isfinite(v[i]))
            throw ConfigError(fmt::format("invalid number '{}' in {}", parts[i], key));
    }
    return {v[0], v[1], v[2]};
}

} // namespace

ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir)
{
    pt::ptree tree;
    try {
        std::istringstream in(strip_comments(text));
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
    }

    int robot_count = 0;
    for (const auto& [section, body] : tree) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end())
            throw ConfigError(fmt::format("unknown section [{}]", section));
        for (const auto& [key, value] : body) {
            if (section == "robots" && key.starts_with("start_"))
                continue;
            if (!it->second.contains(key))
                throw ConfigError(fmt::format("unknown key {}.{}", section, key));
        }
    }

    ScenarioConfig c;
    const std::string map = boost::trim_copy(tree.get<std::string>("scenario.map", ""));
    if (!map.empty()) {
        std::filesystem::path p(map);
        c.map_path = p.is_absolute() ? p : base_dir / p;
    }
    c.method = parse_method(boost::trim_copy(tree.get<std::string>("scenario.method", "proposed")));
    c.seed = get<std::uint64_t>(tree, "scenario.seed", c.seed);
    c.max_sim_time = get(tree, "scenario.max_sim_time", c.max_sim_time);
    c.dt = get(tree, "scenario.dt", c.dt);
    c.speed = get(tree, "scenario.speed", c.speed);
    c.start_jitter = get(tree, "scenario.start_jitter", c.start_jitter);

    robot_count = get(tree, "robots.count", 0);
    if (robot_count < 1)
        throw ConfigError("robots.count must be at least 1");
    for (int i = 0; i < robot_count; ++i) {
        const std::string key = fmt::format("robots.start_{}", i);
        const auto raw = tree.get_optional<std::string>(key);
        if (!raw)
            throw ConfigError(fmt::format("missing {}", key));
        c.starts.push_back(parse_pose(key, *raw));
    }

    c.beam_count = get(tree, "lidar.beams", c.beam_count);
    c.max_range = get(tree, "lidar.max_range", c.max_range);

    c.filter.per_unk = get(tree, "filter.per_unk", c.filter.per_unk);
    c.filter.rad = get(tree, "filter.rad", c.filter.rad);
    c.filter.min_pts = get(tree, "filter.min_pts", c.filter.min_pts);
    c.filter.max_pts = get(tree, "filter.max_pts", c.filter.max_pts);
    c.filter.rad_step = get(tree, "filter.rad_step", c.filter.rad_step);
    c.filter.perc_step = get(tree, "filter.perc_step", c.filter.perc_step);

    c.utility.lambda = get(tree, "utility.lambda", c.utility.lambda);
    c.utility.tree_weight = get(tree, "utility.tree_weight", c.utility.tree_weight);
    c.utility.u2_weight = get(tree, "utility.u2_weight", c.utility.u2_weight);

    c.graph.node_spacing = get(tree, "graph.node_spacing", c.graph.node_spacing);
    c.graph.loop_closure_radius = get(tree, "graph.loop_closure_radius", c.graph.loop_closure_radius);
    c.graph.odometry_weight = get(tree, "graph.odometry_weight", c.graph.odometry_weight);
    c.graph.loop_weight = get(tree, "graph.loop_weight", c.graph.loop_weight);

    c.goal_skip_wait = get(tree, "server.goal_skip_wait", c.goal_skip_wait);

    c.probabilities.unknown = get(tree, "map.p_unknown", c.probabilities.unknown);
    c.probabilities.free = get(tree, "map.p_free", c.probabilities.free);
    c.probabilities.occupied = get(tree, "map.p_occupied", c.probabilities.occupied);

    c.planner.inflation = get(tree, "planner.inflation", c.planner.inflation);

    c.validate();
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(fmt::format("cannot open config file {}", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.parent_path());
}

} // namespace mrexplore
