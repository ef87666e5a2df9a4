#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "flownav/errors.hpp"
#include "flownav/imageio.hpp"
#include "flownav/scenario.hpp"
#include "flownav/sim.hpp"

namespace fs = std::filesystem;
using namespace flownav;

namespace {

struct RunArgs {
    std::string scenario_path;
    std::string controller;
    std::string flow_algo;
    std::string rules;
    std::string mode;
    int steps = -1;
    long seed = -1;
    double scale_factor = 0.0;
    std::string out_dir = "out";
    bool dump_frames = false;
    bool dump_flow = false;
    bool calibrate = false;
};

void apply_overrides(Scenario& sc, const RunArgs& args) {
    if (!args.controller.empty()) sc.controller.id = fuzzy::model_from_name(args.controller);
    if (!args.flow_algo.empty())
        sc.config.flow_params.algorithm = flow::algorithm_from_name(args.flow_algo);
    if (!args.rules.empty()) sc.controller.variant = fuzzy::rule_variant_from_name(args.rules);
    if (!args.mode.empty()) sc.mode = robot::locomotion_mode_from_name(args.mode);
    if (args.steps > 0) sc.config.steps = args.steps;
    if (args.seed >= 0) sc.config.seed = static_cast<std::uint64_t>(args.seed);
    if (args.scale_factor > 0.0) sc.controller.scale_factor = args.scale_factor;
}

int cmd_run(const RunArgs& args) {
    Scenario sc = load_scenario(args.scenario_path);
    apply_overrides(sc, args);
    if (args.calibrate) {
        sc.controller.scale_factor = sim::calibrate_scale(sc);
        std::printf("calibrated scale_factor = %.9g\n", sc.controller.scale_factor);
    }

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + args.out_dir + "'");

    sim::SimHooks hooks;
    if (args.dump_frames) {
        hooks.frame_sink = [&](int step, const render::ColorFrame& color,
                               const flow::Frame& processed) {
            char name[64];
            std::snprintf(name, sizeof name, "color_%06d.ppm", step);
            imageio::write_ppm((fs::path(args.out_dir) / name).string(), color);
            std::snprintf(name, sizeof name, "frame_%06d.pgm", step);
            imageio::write_pgm((fs::path(args.out_dir) / name).string(), processed.g);
        };
    }
    if (args.dump_flow) {
        hooks.flow_sink = [&](int step, const flow::FlowField& field) {
            char name[64];
            std::snprintf(name, sizeof name, "flow_%06d.flo2", step);
            imageio::write_flo2((fs::path(args.out_dir) / name).string(), field);
        };
    }

    sim::TrajectoryLog log = sim::run(sc, hooks);
    std::string csv = (fs::path(args.out_dir) / "trajectory.csv").string();
    sim::write_csv(csv, log);

    std::cout << "scenario: " << sc.name << "\n"
              << "steps: " << log.records.size() << "\n"
              << "trajectory: " << csv << "\n";
    std::cout << sim::format_metrics(sim::metrics(log, sc));
    return 0;
}

int cmd_calibrate(const std::string& path, int pairs, long seed) {
    Scenario sc = load_scenario(path);
    if (seed >= 0) sc.config.seed = static_cast<std::uint64_t>(seed);
    double factor = sim::calibrate_scale(sc, pairs);
    std::printf("scale_factor = %.9g\n", factor);
    std::printf("# paste into the [controller] section of %s\n", path.c_str());
    return 0;
}

int cmd_metrics(const std::string& csv_path, const std::string& scenario_path) {
    Scenario sc = load_scenario(scenario_path);
    sim::TrajectoryLog log = sim::read_csv(csv_path);
    std::cout << sim::format_metrics(sim::metrics(log, sc));
    return 0;
}

int cmd_dump_controller(const std::string& path) {
    Scenario sc = load_scenario(path);
    std::cout << fuzzy::describe_controller(fuzzy::build_controller(sc.controller));
    std::cout << "\nscale_factor = " << sc.controller.scale_factor << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optical-flow corridor navigation simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run a scenario and write the trajectory CSV");
    run->add_option("scenario", run_args.scenario_path, "Scenario file")->required();
    run->add_option("--controller", run_args.controller,
                    "center_flying|center_flying_speed|turn_at_threshold");
    run->add_option("--flow", run_args.flow_algo, "hs|lk");
    run->add_option("--rules", run_args.rules, "prose|literal speed-rule pairing");
    run->add_option("--mode", run_args.mode, "crab|realign");
    run->add_option("--steps", run_args.steps, "Override step count");
    run->add_option("--seed", run_args.seed, "Override texture seed");
    run->add_option("--scale-factor", run_args.scale_factor, "Override flow scale factor");
    run->add_option("--out", run_args.out_dir, "Output directory (default: out)");
    run->add_flag("--dump-frames", run_args.dump_frames, "Write PPM/PGM frames per step");
    run->add_flag("--dump-flow", run_args.dump_flow, "Write .flo2 flow fields per step");
    run->add_flag("--calibrate", run_args.calibrate,
                  "Recalibrate the flow scale for this world before running");

    std::string cal_path;
    int cal_pairs = 12;
    long cal_seed = -1;
    CLI::App* cal = app.add_subcommand("calibrate", "Derive the flow scale factor");
    cal->add_option("scenario", cal_path, "Reference corridor scenario")->required();
    cal->add_option("--pairs", cal_pairs, "Frame pairs to sample (>= 10)");
    cal->add_option("--seed", cal_seed, "Override texture seed");

    std::string met_csv, met_scn;
    CLI::App* met = app.add_subcommand("metrics", "Recompute metrics from a trajectory CSV");
    met->add_option("log", met_csv, "trajectory.csv")->required();
    met->add_option("scenario", met_scn, "Scenario file")->required();

    std::string dump_path;
    CLI::App* dump = app.add_subcommand("dump-controller", "Print the resolved fuzzy model");
    dump->add_option("scenario", dump_path, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (cal->parsed()) return cmd_calibrate(cal_path, cal_pairs, cal_seed);
        if (met->parsed()) return cmd_metrics(met_csv, met_scn);
        if (dump->parsed()) return cmd_dump_controller(dump_path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
