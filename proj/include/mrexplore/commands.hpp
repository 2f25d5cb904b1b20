#ifndef MREXPLORE_COMMANDS_HPP
#define MREXPLORE_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mrexplore/config.hpp"
#include "mrexplore/simulator.hpp"

namespace mrexplore {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

/* Per-run numbers the comparison is built from, as stored in summary.csv */
struct SeedResult
{
    std::string method;
    std::uint64_t seed = 0;
    double final_coverage = 0.0;
    double mean_reduction = 0.0;
    MapQuality quality;
};

struct MethodSummary
{
    std::string method;
    std::size_t seeds = 0;
    double coverage_mean = 0.0;
    /* Sample standard deviation; zero for a single seed */
    double coverage_stddev = 0.0;
    double reduction_mean = 0.0;
    MapQuality quality_mean;
};

struct ComparisonReport
{
    std::vector<SeedResult> rows;
    std::vector<MethodSummary> summaries;
};

/* Writes metrics.csv, summary.csv, map_merged.pgm and map_r<i>.pgm (with
 * their .meta sidecars) into dir */
void write_run_outputs(const std::filesystem::path& dir, const RunResult& result);

SeedResult read_summary(const std::filesystem::path& summary_csv);
/* Groups rows by method in first-appearance order */
ComparisonReport aggregate(std::vector<SeedResult> rows);
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);
void print_comparison_table(std::ostream& out, const ComparisonReport& report);

/* Exit codes: 0 success, 1 config error, 2 runtime error; errors are
 * reported on standard error */
int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir);
int cmd_compare(const std::filesystem::path& config_path, const std::vector<std::string>& methods,
                const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out_dir);

} // namespace mrexplore

#endif // MREXPLORE_COMMANDS_HPP
