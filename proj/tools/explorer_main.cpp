#include <cstdlib>
#include <string>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "mrexplore/commands.hpp"

namespace {

constexpr const char* kVersion = "explorer 1.0.0";

constexpr const char* kFooter = R"(Output files
  metrics.csv   one row per tick:
                time,coverage_r0..coverage_r<N-1>,merged_coverage,raw_frontiers,
                filtered_frontiers,map_entropy,loop_closures
                (coverage in percent, entropy in bits, frontier counts from the
                most recent allocation turn)
  summary.csv   method,seed,final_time,final_coverage,mean_reduction,iterations,
                ssim,rmse,alignment_error,total_distance,distance_r0..distance_r<N-1>
  comparison.csv (compare only)
                row,method,seed,final_coverage,coverage_stddev,mean_reduction,
                ssim,rmse,alignment_error
                one "seed" row per run followed by one "summary" row per method
  map_merged.pgm, map_r<i>.pgm with .meta sidecars
All floating point columns use six decimals.

Exit status: 0 success, 1 configuration error, 2 runtime error.
Logging: EXPLORER_LOG=error|warn|info|debug (default warn).)";

void setup_logging()
{
    auto logger = spdlog::stderr_color_st("explorer");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("EXPLORER_LOG"))
        spdlog::set_level(spdlog::level::from_str(level));
}

} // namespace

int main(int argc, char** argv)
{
    setup_logging();

    CLI::App app{"Multi-robot frontier exploration simulator"};
    app.set_version_flag("--version", kVersion);
    app.footer(kFooter);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;

    auto* run = app.add_subcommand("run", "Run one scenario");
    run->add_option("--config", config_path, "Scenario config file")->required();
    run->add_option("--out", out_dir, "Output directory")->required();

    std::vector<std::string> methods;
    std::vector<std::uint64_t> seeds;
    auto* compare = app.add_subcommand("compare", "Run several methods over several seeds");
    compare->add_option("--config", config_path, "Scenario config file")->required();
    compare->add_option("--methods", methods, "proposed,mags,greedy_frontier")
        ->required()
        ->delimiter(',');
    compare->add_option("--seeds", seeds, "Comma separated seeds")->required()->delimiter(',');
    compare->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mrexplore::kExitConfigError;
    }

    if (*run)
        return mrexplore::cmd_run(config_path, out_dir);
    return mrexplore::cmd_compare(config_path, methods, seeds, out_dir);
}
