#include "wormsim/cli.hpp"

#include <filesystem>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wormsim/calibration.hpp"
#include "wormsim/experiments.hpp"
#include "wormsim/io.hpp"
#include "wormsim/scenario.hpp"
#include "wormsim/simulator.hpp"

namespace wormsim {

namespace {

RobotCalibration load_calibration_file(const std::string& path) {
    RobotCalibration calib;
    if (!path.empty()) calib = merge_calibration(calib, read_text_file(path));
    return calib;
}

SweepSpec parse_range(const std::string& param, const std::string& range) {
    SweepSpec spec;
    spec.parameter = param;
    double parts[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? range.find(':', pos) : range.size();
        if (end == std::string::npos) throw std::invalid_argument("--range must be LO:HI:STEP");
        const std::string token = range.substr(pos, end - pos);
        std::size_t used = 0;
        try {
            parts[i] = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (token.empty() || used != token.size()) throw std::invalid_argument("--range must be LO:HI:STEP");
        pos = end + 1;
    }
    spec.lo = parts[0];
    spec.hi = parts[1];
    spec.step = parts[2];
    return spec;
}

struct RunArgs {
    std::string scenario, calib, out;
    std::uint64_t seed = 0;
    int max_iterations = SimConfig{}.max_iterations;
    double drop = 0.0, corrupt = 0.0;
};

struct MonteCarloArgs {
    int pegs = 12;
    int runs = 100;
    std::uint64_t seed = 0;
    std::string out_dir, calib;
    int max_iterations = SimConfig{}.max_iterations;
    unsigned workers = 0;
};

struct SweepArgs {
    std::string param, range, out, calib;
};

struct PlotArgs {
    std::string scenario, out;
    std::vector<std::string> trajectories;
};

struct GenerateArgs {
    int pegs = 12;
    std::uint64_t seed = 0;
    std::string out, base;
};

struct CanonicalArgs {
    std::string name, out;
};

int do_run(const RunArgs& a, std::ostream& out) {
    const Scenario scenario = read_scenario_file(a.scenario);
    const RobotCalibration calib = load_calibration_file(a.calib);
    ChannelConfig channel;
    channel.drop_probability = a.drop;
    channel.corrupt_probability = a.corrupt;
    SimConfig sim;
    sim.seed = a.seed;
    sim.max_iterations = a.max_iterations;
    const RunResult r = run(scenario, calib, channel, sim);
    write_text_file(a.out, trajectory_csv(r.trajectory));
    out << run_summary_json(r, a.seed) << '\n';
    return kExitOk;
}

int do_montecarlo(const MonteCarloArgs& a, std::ostream& out) {
    MonteCarloOptions opt;
    opt.peg_count = a.pegs;
    opt.runs = a.runs;
    opt.base_seed = a.seed;
    opt.workers = a.workers;
    opt.calib = load_calibration_file(a.calib);
    opt.sim.max_iterations = a.max_iterations;
    const MonteCarloResult mc = run_montecarlo(opt);

    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec) throw IoError("cannot create '" + a.out_dir + "': " + ec.message());
    const std::filesystem::path dir(a.out_dir);
    for (std::size_t i = 0; i < mc.csv.size(); ++i) {
        if (mc.csv[i].empty()) continue;
        write_text_file((dir / fmt::format("run_{:04d}.csv", i)).string(), mc.csv[i]);
    }
    write_text_file((dir / "report.json").string(), mc.report.to_json());
    const OutcomeHistogram& h = mc.report.histogram;
    out << fmt::format("{{\"reached\":{},\"diverged\":{},\"stuck\":{},\"timeout\":{},\"generation_failures\":{}}}\n",
                       h.reached, h.diverged, h.stuck, h.timeout, mc.report.generation_failures);
    return kExitOk;
}

int do_sweep(const SweepArgs& a, std::ostream& out) {
    const SweepSpec spec = parse_range(a.param, a.range);
    const SweepResult result = run_sweep(spec, load_calibration_file(a.calib));
    write_text_file(a.out, result.csv());
    out << fmt::format("{{\"param\":\"{}\",\"argmax\":{},\"objective_mm\":{}}}\n", a.param, result.best.value,
                       result.best.objective);
    return kExitOk;
}

int do_plot(const PlotArgs& a) {
    const Scenario scenario = read_scenario_file(a.scenario);
    std::vector<std::vector<TrajectoryPoint>> paths;
    for (const std::string& path : a.trajectories) {
        const std::string text = read_text_file(path);
        try {
            paths.push_back(parse_trajectory_csv(text));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ": " + e.what());
        }
    }
    write_text_file(a.out, render_svg(scenario, paths));
    return kExitOk;
}

int do_generate(const GenerateArgs& a) {
    const Scenario base = a.base.empty() ? default_template() : read_scenario_file(a.base);
    write_scenario_file(generate_scenario(a.seed, a.pegs, base), a.out);
    return kExitOk;
}

int do_canonical(const CanonicalArgs& a) {
    const auto s = canonical_scenario(a.name);
    if (!s) throw std::invalid_argument("unknown canonical scenario '" + a.name + "' (far-wall, top-right)");
    write_scenario_file(*s, a.out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Peristaltic worm robot simulator", "wormsim"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Simulate one scenario and write its trajectory CSV");
    run_cmd->add_option("--scenario", run_args.scenario, "Scenario JSON")->required();
    run_cmd->add_option("--seed", run_args.seed, "Run seed")->required();
    run_cmd->add_option("--calib", run_args.calib, "Calibration override JSON");
    run_cmd->add_option("--max-iterations", run_args.max_iterations)->check(CLI::PositiveNumber);
    run_cmd->add_option("--drop-probability", run_args.drop)->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--corrupt-probability", run_args.corrupt)->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--out", run_args.out, "Trajectory CSV")->required();

    MonteCarloArgs mc_args;
    auto* mc_cmd = app.add_subcommand("montecarlo", "Batch of runs over random peg layouts");
    mc_cmd->add_option("--pegs", mc_args.pegs)->check(CLI::NonNegativeNumber);
    mc_cmd->add_option("--runs", mc_args.runs)->required()->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", mc_args.seed)->required();
    mc_cmd->add_option("--out-dir", mc_args.out_dir)->required();
    mc_cmd->add_option("--calib", mc_args.calib);
    mc_cmd->add_option("--max-iterations", mc_args.max_iterations)->check(CLI::PositiveNumber);
    mc_cmd->add_option("--workers", mc_args.workers, "Worker threads, 0 = all cores");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Forward-cycle displacement over one calibration parameter");
    sweep_cmd->add_option("--param", sweep_args.param)->required();
    sweep_cmd->add_option("--range", sweep_args.range, "LO:HI:STEP")->required();
    sweep_cmd->add_option("--out", sweep_args.out)->required();
    sweep_cmd->add_option("--calib", sweep_args.calib);

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot", "Render trajectories over a scenario as SVG");
    plot_cmd->add_option("--scenario", plot_args.scenario)->required();
    plot_cmd->add_option("--out", plot_args.out)->required();
    plot_cmd->add_option("trajectories", plot_args.trajectories, "Trajectory CSV files");

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "Write a random peg-field scenario");
    gen_cmd->add_option("--pegs", gen_args.pegs)->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", gen_args.seed)->required();
    gen_cmd->add_option("--template", gen_args.base, "Peg-free scenario to populate");
    gen_cmd->add_option("--out", gen_args.out)->required();

    CanonicalArgs can_args;
    auto* can_cmd = app.add_subcommand("canonical", "Write a built-in reference scenario");
    can_cmd->add_option("--name", can_args.name, "far-wall | top-right")->required();
    can_cmd->add_option("--out", can_args.out)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (*run_cmd) return do_run(run_args, out);
        if (*mc_cmd) return do_montecarlo(mc_args, out);
        if (*sweep_cmd) return do_sweep(sweep_args, out);
        if (*plot_cmd) return do_plot(plot_args);
        if (*gen_cmd) return do_generate(gen_args);
        if (*can_cmd) return do_canonical(can_args);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitDomain;
}

}  // namespace wormsim
