// phevload: expected and simulated daily charging demand of plug-in EVs.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phev/commands.hpp"
#include "phev/config.hpp"
#include "phev/error.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kConfigInvalid = 3,
    kNumericFailure = 4,
    kIoError = 5,
};

struct Inputs {
    std::vector<std::string> configs;
    std::vector<std::string> presets;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    unsigned workers = 0;
    bool svg = false;
};

void add_common(CLI::App& cmd, Inputs& in, bool many)
{
    if (many) {
        cmd.add_option("--config", in.configs, "Scenario config file (repeatable)");
        cmd.add_option("--preset", in.presets, "Shipped preset name (repeatable)");
    } else {
        auto* cfg = cmd.add_option("--config", in.configs, "Scenario config file")
                        ->expected(1);
        auto* pre = cmd.add_option("--preset", in.presets, "Shipped preset name")
                        ->expected(1);
        cfg->excludes(pre);
    }
    cmd.add_option("--out", in.out_dir, "Output directory (env PHEV_OUT_DIR, default .)");
    cmd.add_flag("--svg", in.svg, "Also write an SVG plot");
}

std::vector<phev::ScenarioConfig> load_all(const Inputs& in)
{
    std::vector<phev::ScenarioConfig> out;
    for (const auto& path : in.configs) {
        out.push_back(phev::config::load_scenario(path));
    }
    for (const auto& name : in.presets) {
        out.push_back(phev::config::load_preset(name));
    }
    std::optional<std::uint64_t> seed = in.seed;
    if (!seed) {
        if (const char* env = std::getenv("PHEV_SEED")) {
            try {
                std::size_t used = 0;
                seed = std::stoull(env, &used);
                if (env[used] != '\0') {
                    throw std::invalid_argument(env);
                }
            } catch (const std::exception&) {
                throw phev::ConfigInvalid("PHEV_SEED", "expected an unsigned integer");
            }
        }
    }
    if (seed) {
        for (auto& c : out) {
            phev::config::override_seed(c, *seed);
        }
    }
    return out;
}

phev::commands::CommandOptions options_from(const Inputs& in)
{
    phev::commands::CommandOptions opts;
    if (!in.out_dir.empty()) {
        opts.out_dir = in.out_dir;
    } else if (const char* env = std::getenv("PHEV_OUT_DIR")) {
        opts.out_dir = env;
    }
    opts.workers = in.workers;
    opts.svg = in.svg;
    return opts;
}

void print(const phev::commands::RunReport& report)
{
    std::cout << phev::commands::report_to_json(report);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Expected daily charging demand of uncoordinated plug-in EVs"};
    app.require_subcommand(1);

    Inputs in;
    auto* expected = app.add_subcommand("expected", "Analytic folded daily profile");
    add_common(*expected, in, false);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo fleet simulation");
    add_common(*simulate, in, false);
    simulate->add_option("--seed", in.seed, "Random seed (env PHEV_SEED)");
    simulate->add_option("--workers", in.workers, "Worker threads (0 = all cores)");

    auto* compare = app.add_subcommand("compare", "Compare analytic profiles of scenarios");
    add_common(*compare, in, true);

    auto* presets = app.add_subcommand("presets", "List shipped presets");
    std::string show;
    presets->add_option("--show", show, "Print the JSON of one preset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (presets->parsed()) {
            if (!show.empty()) {
                std::cout << phev::config::preset_text(show);
            } else {
                for (const auto& name : phev::config::preset_names()) {
                    std::cout << name << '\n';
                }
            }
            return kOk;
        }

        const auto configs = load_all(in);
        const auto opts = options_from(in);
        if (compare->parsed()) {
            if (configs.size() < 2) {
                std::cerr << "compare: give at least two --config/--preset scenarios\n";
                return kUsage;
            }
            print(phev::commands::cmd_compare(configs, opts));
            return kOk;
        }
        if (configs.size() != 1) {
            std::cerr << "give exactly one of --config or --preset\n";
            return kUsage;
        }
        if (expected->parsed()) {
            print(phev::commands::cmd_expected(configs.front(), opts));
        } else {
            print(phev::commands::cmd_simulate(configs.front(), opts));
        }
        return kOk;
    } catch (const phev::ConfigInvalid& e) {
        std::cerr << "config invalid: " << e.what() << '\n';
        return kConfigInvalid;
    } catch (const phev::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIoError;
    } catch (const phev::Error& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    }
}
