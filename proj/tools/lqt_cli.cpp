// lqt: scenario runner, check registry and acceptance suite.

#include "lqt/acceptance.hpp"
#include "lqt/checks.hpp"
#include "lqt/error.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

lqt::Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw lqt::ConfigError("cannot open " + path);
    }
    try {
        return lqt::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw lqt::ConfigError(path + ": " + e.what());
    }
}

std::ofstream open_out(const fs::path& p)
{
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream out(p);
    if (!out) {
        throw lqt::ConfigError("cannot write " + p.string());
    }
    return out;
}

struct RunArgs {
    std::string config;
    std::string preset;
    std::optional<std::size_t> steps;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string width;
    std::vector<std::string> checks;
    bool timings = false;
};

int do_run(const RunArgs& a)
{
    lqt::Json j;
    if (!a.config.empty()) {
        j = read_json(a.config);
    } else {
        j["preset"] = a.preset;
    }
    if (!a.checks.empty()) {
        j["checks"] = a.checks;
    }
    if (!a.width.empty()) {
        j["output"]["interval_width"] = a.width;
    }
    if (a.timings) {
        j["output"]["timings"] = true;
    }
    lqt::RunConfig cfg = lqt::config_from_json(j, a.steps, a.seed);

    // Output paths: --out DIR wins, then the config's output block.
    std::optional<fs::path> json_path;
    std::optional<fs::path> csv_path;
    if (!a.out_dir.empty()) {
        json_path = fs::path(a.out_dir) / "report.json";
        csv_path = fs::path(a.out_dir) / "trace.csv";
    } else if (j.contains("output")) {
        if (j["output"].contains("json")) {
            json_path = j["output"]["json"].get<std::string>();
        }
        if (j["output"].contains("csv")) {
            csv_path = j["output"]["csv"].get<std::string>();
        }
    }

    std::ofstream csv;
    if (csv_path) {
        csv = open_out(*csv_path);
    }
    const lqt::RunReport report = lqt::run(cfg, csv_path ? &csv : nullptr);
    const std::string text = report.document.dump(2) + "\n";
    if (json_path) {
        open_out(*json_path) << text;
    } else {
        std::cout << text;
    }
    for (const auto& o : report.outcomes) {
        std::cerr << lqt::verdict_name(o.verdict) << "  " << o.name << ": " << o.summary << '\n';
    }
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monomial local quadratic transforms: scenarios, checks and acceptance runs"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Replay a scenario and evaluate checks");
    auto* cfg_opt = run->add_option("--config", ra.config, "JSON config file")->check(CLI::ExistingFile);
    auto* preset_opt = run->add_option("--preset", ra.preset, "Named preset");
    cfg_opt->excludes(preset_opt);
    run->add_option("--steps", ra.steps, "Steps (episodes for episodic presets)");
    run->add_option("--seed", ra.seed, "Seed for random scenarios");
    run->add_option("--out", ra.out_dir, "Write report.json and trace.csv here");
    run->add_option("--interval-width", ra.width, "Interval width for reports, e.g. 1/1000000");
    run->add_option("--checks", ra.checks, "Checks to run")->delimiter(',');
    run->add_flag("--timings", ra.timings, "Include timings in the report");

    app.add_subcommand("list-presets", "List bundled scenarios");
    app.add_subcommand("list-checks", "List registered checks");

    std::string check;
    auto* explain = app.add_subcommand("explain", "Describe a check");
    explain->add_option("check", check)->required();

    std::string preset_name;
    std::optional<std::size_t> export_steps;
    auto* exp = app.add_subcommand("export", "Print a preset in the scenario schema");
    exp->add_option("preset", preset_name)->required();
    exp->add_option("--steps", export_steps);

    bool all = false;
    std::vector<int> criteria;
    unsigned threads = 0;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_flag("--all", all, "Every criterion");
    verify->add_option("--criterion", criteria, "Only these criteria")->check(CLI::Range(1, lqt::kCriteria));
    verify->add_option("--threads", threads, "Worker threads (0: all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            if (ra.config.empty() && ra.preset.empty()) {
                throw lqt::ConfigError("run needs --config or --preset");
            }
            return do_run(ra);
        }
        if (app.got_subcommand("list-presets")) {
            for (const auto& p : lqt::list_presets()) {
                std::cout << p << '\n';
            }
            return 0;
        }
        if (app.got_subcommand("list-checks")) {
            for (const auto& c : lqt::check_names()) {
                std::cout << c << '\n';
            }
            return 0;
        }
        if (*explain) {
            std::cout << lqt::explain(check) << '\n';
            return 0;
        }
        if (*exp) {
            std::cout << lqt::scenario_to_json(lqt::preset(preset_name, export_steps)).dump(2) << '\n';
            return 0;
        }
        if (*verify) {
            if (!all && criteria.empty()) {
                throw lqt::ConfigError("verify needs --all or --criterion");
            }
            const std::set<int> only(criteria.begin(), criteria.end());
            bool ok = true;
            for (int id = 1; id <= lqt::kCriteria; ++id) {
                if (!only.empty() && !only.count(id)) {
                    continue;
                }
                const auto r = lqt::run_criterion(id, threads);
                std::cout << lqt::format_result(r) << std::endl;
                ok = ok && r.pass;
            }
            return ok ? 0 : 1;
        }
    } catch (const lqt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
