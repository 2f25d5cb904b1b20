#include "mrexplore/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include "mrexplore/map_io.hpp"

namespace mrexplore {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    boost::split(fields, line, boost::is_any_of(","));
    for (auto& f : fields)
        boost::trim(f);
    return fields;
}

double parse_double(const std::string& text, const fs::path& source)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw std::runtime_error(fmt::format("invalid number '{}' in {}", text, source.string()));
    return v;
}

} // namespace

void write_run_outputs(const fs::path& dir, const RunResult& result)
{
    fs::create_directories(dir);
    {
        auto out = open_output(dir / "metrics.csv");
        write_metrics_csv(out, result.metrics);
    }
    {
        auto out = open_output(dir / "summary.csv");
        write_summary_csv(out, result.metrics);
    }
    save_occupancy_grid(dir / "map_merged.pgm", result.merged_map);
    for (std::size_t i = 0; i < result.robot_maps.size(); ++i)
        save_occupancy_grid(dir / fmt::format("map_r{}.pgm", i), result.robot_maps[i]);
}

SeedResult read_summary(const fs::path& summary_csv)
{
    std::ifstream in(summary_csv);
    std::string header, row;
    if (!in || !std::getline(in, header) || !std::getline(in, row))
        throw std::runtime_error("cannot read run summary " + summary_csv.string());
    const auto names = split_csv_line(header);
    const auto values = split_csv_line(row);
    if (names.size() != values.size())
        throw std::runtime_error("malformed run summary " + summary_csv.string());
    std::map<std::string, std::string> field;
    for (std::size_t i = 0; i < names.size(); ++i)
        field[names[i]] = values[i];
    auto need = [&](const std::string& key) -> const std::string& {
        const auto it = field.find(key);
        if (it == field.end())
            throw std::runtime_error(
                fmt::format("column '{}' missing in {}", key, summary_csv.string()));
        return it->second;
    };

    SeedResult r;
    r.method = need("method");
    r.seed = static_cast<std::uint64_t>(parse_double(need("seed"), summary_csv));
    r.final_coverage = parse_double(need("final_coverage"), summary_csv);
    r.mean_reduction = parse_double(need("mean_reduction"), summary_csv);
    r.quality.ssim = parse_double(need("ssim"), summary_csv);
    r.quality.rmse = parse_double(need("rmse"), summary_csv);
    r.quality.alignment_error = parse_double(need("alignment_error"), summary_csv);
    return r;
}

ComparisonReport aggregate(std::vector<SeedResult> rows)
{
    ComparisonReport report;
    report.rows = std::move(rows);
    std::vector<std::string> order;
    std::map<std::string, std::vector<const SeedResult*>> groups;
    for (const auto& r : report.rows) {
        if (!groups.contains(r.method))
            order.push_back(r.method);
        groups[r.method].push_back(&r);
    }
    for (const auto& method : order) {
        const auto& g = groups[method];
        MethodSummary s;
        s.method = method;
        s.seeds = g.size();
        const double n = static_cast<double>(g.size());
        for (const SeedResult* r : g) {
            s.coverage_mean += r->final_coverage / n;
            s.reduction_mean += r->mean_reduction / n;
            s.quality_mean.ssim += r->quality.ssim / n;
            s.quality_mean.rmse += r->quality.rmse / n;
            s.quality_mean.alignment_error += r->quality.alignment_error / n;
        }
        if (g.size() > 1) {
            double ss = 0.0;
            for (const SeedResult* r : g)
                ss += (r->final_coverage - s.coverage_mean) * (r->final_coverage - s.coverage_mean);
            s.coverage_stddev = std::sqrt(ss / (n - 1.0));
        }
        if (g.size() == 1) {
            /* Avoid rounding drift: one seed summarizes to itself */
            s.coverage_mean = g.front()->final_coverage;
            s.reduction_mean = g.front()->mean_reduction;
            s.quality_mean = g.front()->quality;
        }
        report.summaries.push_back(s);
    }
    return report;
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report)
{
    out << "row,method,seed,final_coverage,coverage_stddev,mean_reduction,ssim,rmse,"
           "alignment_error\n";
    for (const auto& r : report.rows)
        fmt::print(out, "seed,{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.method, r.seed,
                   r.final_coverage, 0.0, r.mean_reduction, r.quality.ssim, r.quality.rmse,
                   r.quality.alignment_error);
    for (const auto& s : report.summaries)
        fmt::print(out, "summary,{},all,{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", s.method,
                   s.coverage_mean, s.coverage_stddev, s.reduction_mean, s.quality_mean.ssim,
                   s.quality_mean.rmse, s.quality_mean.alignment_error);
}

void print_comparison_table(std::ostream& out, const ComparisonReport& report)
{
    fmt::print(out, "{:<16} {:>5} {:>10} {:>8} {:>10} {:>7} {:>8} {:>7}\n", "method", "seeds",
               "coverage%", "stddev", "reduction%", "ssim", "rmse", "ae");
    for (const auto& s : report.summaries)
        fmt::print(out, "{:<16} {:>5} {:>10.2f} {:>8.2f} {:>10.2f} {:>7.3f} {:>8.2f} {:>7.3f}\n",
                   s.method, s.seeds, s.coverage_mean, s.coverage_stddev, s.reduction_mean,
                   s.quality_mean.ssim, s.quality_mean.rmse, s.quality_mean.alignment_error);
}

namespace {

/* Runs one scenario into a scratch directory and renames it into place, so
 * a directory under its final name always holds a complete run */
void run_into(const ScenarioConfig& config, const fs::path& dir)
{
    fs::path scratch = dir;
    scratch += ".partial";
    fs::remove_all(scratch);
    const RunResult result = run(config);
    write_run_outputs(scratch, result);
    fs::remove_all(dir);
    fs::rename(scratch, dir);
}

template <typename F>
int guarded(F&& body)
{
    try {
        body();
        return kExitOk;
    } catch (const ConfigError& e) {
        fmt::print(std::cerr, "config error: {}\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kExitRuntimeError;
    }
}

} // namespace

int cmd_run(const fs::path& config_path, const fs::path& out_dir)
{
    return guarded([&] {
        const ScenarioConfig config = load_config(config_path);
        spdlog::info("running {} seed {} on {}", method_name(config.method), config.seed,
                     config.map_path.string());
        run_into(config, out_dir);
        spdlog::info("wrote {}", out_dir.string());
    });
}

int cmd_compare(const fs::path& config_path, const std::vector<std::string>& methods,
                const std::vector<std::uint64_t>& seeds, const fs::path& out_dir)
{
    return guarded([&] {
        if (methods.empty() || seeds.empty())
            throw ConfigError("compare needs at least one method and one seed");
        const ScenarioConfig base = load_config(config_path);
        std::vector<Method> parsed;
        for (const auto& m : methods)
            parsed.push_back(parse_method(m));

        std::vector<fs::path> summaries;
        for (const Method m : parsed) {
            for (const auto seed : seeds) {
                ScenarioConfig config = base;
                config.method = m;
                config.seed = seed;
                const fs::path dir = out_dir / fmt::format("{}_seed{}", method_name(m), seed);
                spdlog::info("running {} seed {}", method_name(m), seed);
                run_into(config, dir);
                summaries.push_back(dir / "summary.csv");
            }
        }

        std::vector<SeedResult> rows;
        for (const auto& s : summaries)
            rows.push_back(read_summary(s));
        const ComparisonReport report = aggregate(std::move(rows));
        {
            auto out = open_output(out_dir / "comparison.csv");
            write_comparison_csv(out, report);
        }
        print_comparison_table(std::cout, report);
    });
}

} // namespace mrexplore
