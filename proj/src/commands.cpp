#include "phev/commands.hpp"

#include <chrono>

#include <json.hpp>

#include "phev/analytic.hpp"
#include "phev/error.hpp"
#include "phev/io.hpp"
#include "phev/montecarlo.hpp"

namespace phev::commands {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void add_profile_metrics(RunReport& report, const DemandProfile& profile)
{
    const std::size_t peak = peak_bin(profile);
    report.metrics["energy_kwh"] = daily_energy(profile);
    report.metrics["peak_kw"] = profile.values[peak];
    report.metrics["peak_time_h"] = profile.grid.center_of(peak);
    report.metrics["evening_morning_ratio"] = evening_morning_ratio(profile);
}

std::string write_report(const RunReport& report, const CommandOptions& options,
                         const std::string& stem)
{
    const auto path = options.out_dir / (stem + "_report.json");
    io::write_text(path, report_to_json(report));
    return path.string();
}

}  // namespace

std::string report_to_json(const RunReport& report)
{
    nlohmann::ordered_json j;
    j["scenario_hash"] = report.scenario_hash;
    j["mode"] = report.mode;
    j["method"] = report.method;
    j["files"] = report.files;
    j["metrics"] = report.metrics;
    j["notes"] = report.notes;
    j["wall_seconds"] = report.wall_seconds;
    return j.dump(2) + "\n";
}

DemandProfile expected_profile(const ScenarioConfig& config)
{
    const SessionModel model = build_session_model(config);
    const TimeGrid grid = TimeGrid::with_resolution(config.resolution_h);
    DemandProfile profile = fold_to_day(model, grid, resolve_fold_window(config, model));
    profile.meta.scenario_hash = scenario_hash(config);
    return profile;
}

DemandProfile simulated_profile(const ScenarioConfig& config, unsigned workers)
{
    const SessionModel model = build_session_model(config);
    const TimeGrid grid = TimeGrid::with_resolution(config.resolution_h);
    DemandProfile profile = simulate_fleet(
        model, grid, {.fleet_size = config.fleet_size, .seed = config.seed, .workers = workers});
    profile.meta.scenario_hash = scenario_hash(config);
    return profile;
}

double evening_morning_ratio(const DemandProfile& profile)
{
    return window_mean(profile, 18.0, 25.0) / window_mean(profile, 8.0, 14.0);
}

RunReport cmd_expected(const ScenarioConfig& config, const CommandOptions& options)
{
    const auto start = Clock::now();
    const DemandProfile profile = expected_profile(config);

    RunReport report;
    report.scenario_hash = profile.meta.scenario_hash;
    report.mode = "analytic";
    report.method = profile.meta.method;
    report.notes = config.notes;
    add_profile_metrics(report, profile);
    report.metrics["fold_window_days"] = profile.meta.fold_window;
    report.metrics["truncation_bound_kwh"] = profile.meta.truncation_bound;

    const std::string stem = config.name + "_expected";
    const auto csv = options.out_dir / (stem + ".csv");
    io::write_text(csv, io::profile_to_csv(profile));
    report.files.push_back(csv.string());
    if (options.svg) {
        const auto svg = options.out_dir / (stem + ".svg");
        const io::LabeledProfile lp{config.name, &profile};
        io::emit_svg({&lp, 1}, svg, config.name + " expected demand");
        report.files.push_back(svg.string());
    }
    report.wall_seconds = seconds_since(start);
    report.files.push_back((options.out_dir / (stem + "_report.json")).string());
    write_report(report, options, stem);
    return report;
}

RunReport cmd_simulate(const ScenarioConfig& config, const CommandOptions& options)
{
    const auto start = Clock::now();
    const DemandProfile profile = simulated_profile(config, options.workers);

    RunReport report;
    report.scenario_hash = profile.meta.scenario_hash;
    report.mode = "mc";
    report.method = profile.meta.method;
    report.notes = config.notes;
    add_profile_metrics(report, profile);
    report.metrics["sessions"] = static_cast<double>(profile.meta.sessions);
    report.metrics["seed"] = static_cast<double>(config.seed);
    report.metrics["energy_std_error_kwh"] = profile.meta.energy_std_error.value_or(0.0);

    const std::string stem = config.name + "_simulate";
    const auto csv = options.out_dir / (stem + ".csv");
    io::write_text(csv, io::profile_to_csv(profile));
    report.files.push_back(csv.string());
    if (options.svg) {
        const auto svg = options.out_dir / (stem + ".svg");
        const io::LabeledProfile lp{config.name, &profile};
        io::emit_svg({&lp, 1}, svg, config.name + " simulated demand");
        report.files.push_back(svg.string());
    }
    report.wall_seconds = seconds_since(start);
    report.files.push_back((options.out_dir / (stem + "_report.json")).string());
    write_report(report, options, stem);
    return report;
}

RunReport cmd_compare(std::span<const ScenarioConfig> configs, const CommandOptions& options)
{
    if (configs.size() < 2) {
        throw InvalidParameter("compare needs at least two scenarios");
    }
    const auto start = Clock::now();
    std::vector<DemandProfile> profiles;
    profiles.reserve(configs.size());
    for (const auto& c : configs) {
        profiles.push_back(expected_profile(c));
    }

    RunReport report;
    report.mode = "compare";
    std::string csv = "a,b,max_abs_diff_kw,max_diff_of_peak,rms_diff_kw\n";
    for (std::size_t i = 0; i < configs.size(); ++i) {
        report.scenario_hash += (i ? "+" : "") + profiles[i].meta.scenario_hash;
        report.method += (i ? "," : "") + profiles[i].meta.method;
        for (const auto& n : configs[i].notes) {
            report.notes.push_back(configs[i].name + ": " + n);
        }
        for (std::size_t j = i + 1; j < configs.size(); ++j) {
            const ProfileDelta d = compare_profiles(profiles[i], profiles[j]);
            csv += configs[i].name + "," + configs[j].name + "," + io::format_number(d.max_abs_diff)
                   + "," + io::format_number(d.max_diff_of_peak) + ","
                   + io::format_number(d.rms_diff) + "\n";
            const std::string key = configs[i].name + "|" + configs[j].name;
            report.metrics["max_diff_of_peak:" + key] = d.max_diff_of_peak;
            report.metrics["max_abs_diff_kw:" + key] = d.max_abs_diff;
        }
        report.metrics["energy_kwh:" + configs[i].name] = daily_energy(profiles[i]);
    }

    const auto metrics_path = options.out_dir / "compare_metrics.csv";
    io::write_text(metrics_path, csv);
    report.files.push_back(metrics_path.string());
    if (options.svg) {
        std::vector<io::LabeledProfile> labeled;
        for (std::size_t i = 0; i < configs.size(); ++i) {
            labeled.push_back({configs[i].name, &profiles[i]});
        }
        const auto svg = options.out_dir / "compare.svg";
        io::emit_svg(labeled, svg, "Expected daily demand per EV");
        report.files.push_back(svg.string());
    }
    report.wall_seconds = seconds_since(start);
    report.files.push_back((options.out_dir / "compare_report.json").string());
    write_report(report, options, "compare");
    return report;
}

}  // namespace phev::commands
