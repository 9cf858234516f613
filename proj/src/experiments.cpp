#include "wormsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "wormsim/rng.hpp"

namespace wormsim {

namespace {

using ordered_json = nlohmann::ordered_json;

Scenario with_pegs(Scenario s, std::initializer_list<Vec2> centers) {
    for (Vec2 c : centers) s.pegs.push_back({c, kDefaultPegRadius});
    validate(s);
    return s;
}

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

RunSummary summarize(int index, std::uint64_t seed, const RunResult& r) {
    RunSummary s;
    s.index = index;
    s.seed = seed;
    s.outcome = r.outcome;
    s.iterations = r.iterations_used;
    s.progress = r.progress;
    s.initial_distance = r.initial_distance;
    s.final_distance = r.final_distance;
    s.wedged_events = r.wedged_events;
    s.max_peg_penetration = r.max_peg_penetration;
    s.max_wall_penetration = r.max_wall_penetration;
    return s;
}

}  // namespace

Scenario default_template() { return Scenario{}; }

Scenario canonical_far_wall() {
    Scenario s;
    s.start = Pose({150.0, 455.0}, 0.0);
    s.light = {{1420.0, 455.0}, 1.0e6};
    return with_pegs(s, {
                            {450.0, 455.0},
                            {450.0, 235.0},
                            {450.0, 675.0},
                            {700.0, 345.0},
                            {700.0, 565.0},
                            {950.0, 455.0},
                            {950.0, 235.0},
                            {950.0, 675.0},
                            {1180.0, 345.0},
                            {1180.0, 565.0},
                        });
}

Scenario canonical_top_right() {
    Scenario s;
    s.start = Pose({150.0, 200.0}, 0.0);
    s.light = {{1380.0, 760.0}, 1.0e6};
    return with_pegs(s, {
                            {450.0, 320.0},
                            {420.0, 620.0},
                            {700.0, 180.0},
                            {720.0, 480.0},
                            {980.0, 330.0},
                            {960.0, 640.0},
                            {1200.0, 500.0},
                            {1220.0, 200.0},
                        });
}

std::optional<Scenario> canonical_scenario(std::string_view name) {
    if (name == "far-wall") return canonical_far_wall();
    if (name == "top-right") return canonical_top_right();
    return std::nullopt;
}

Scenario jitter_start(const Scenario& scenario, std::uint64_t seed) {
    Rng rng(seed);
    Scenario out = scenario;
    const double dx = rng.uniform(-10.0, 10.0);
    const double dy = rng.uniform(-20.0, 20.0);
    const double dtheta = deg_to_rad(rng.uniform(-5.0, 5.0));
    out.start = Pose(scenario.start.position + Vec2{dx, dy}, scenario.start.heading + dtheta);
    validate(out);
    return out;
}

std::string run_summary_json(const RunResult& r, std::uint64_t seed) {
    ordered_json j;
    j["seed"] = seed;
    j["outcome"] = std::string(to_string(r.outcome));
    j["iterations"] = r.iterations_used;
    j["progress_mean_mm"] = r.progress.mean;
    j["progress_std_mm"] = r.progress.std;
    j["initial_distance_mm"] = r.initial_distance;
    j["final_distance_mm"] = r.final_distance;
    j["wedged_events"] = r.wedged_events;
    j["packets"] = {{"sent", r.channel.sent},
                    {"delivered", r.channel.delivered},
                    {"dropped", r.channel.dropped},
                    {"rejected", r.channel.rejected}};
    return j.dump();
}

void OutcomeHistogram::add(Outcome o) {
    switch (o) {
        case Outcome::Reached: ++reached; break;
        case Outcome::Diverged: ++diverged; break;
        case Outcome::Stuck: ++stuck; break;
        case Outcome::Timeout: ++timeout; break;
    }
}

std::string BatchReport::to_json() const {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["peg_count"] = peg_count;
    j["runs_requested"] = runs_requested;
    j["base_seed"] = base_seed;
    j["histogram"] = {{"reached", histogram.reached},
                      {"diverged", histogram.diverged},
                      {"stuck", histogram.stuck},
                      {"timeout", histogram.timeout}};
    j["generation_failures"] = generation_failures;
    j["progress_mm_per_iteration"] = {{"mean", progress.mean}, {"std", progress.std}};
    ordered_json seeds = ordered_json::array();
    ordered_json runs_json = ordered_json::array();
    for (const RunSummary& r : runs) {
        seeds.push_back(r.seed);
        ordered_json rj;
        rj["index"] = r.index;
        rj["seed"] = r.seed;
        if (r.error) {
            rj["error"] = *r.error;
        } else {
            rj["outcome"] = std::string(to_string(r.outcome));
            rj["iterations"] = r.iterations;
            rj["progress_mean_mm"] = r.progress.mean;
            rj["progress_std_mm"] = r.progress.std;
            rj["initial_distance_mm"] = r.initial_distance;
            rj["final_distance_mm"] = r.final_distance;
            rj["wedged_events"] = r.wedged_events;
        }
        runs_json.push_back(std::move(rj));
    }
    j["seeds"] = std::move(seeds);
    j["runs"] = std::move(runs_json);
    return j.dump(2) + "\n";
}

MonteCarloResult run_montecarlo(const MonteCarloOptions& opt) {
    if (opt.runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (opt.peg_count < 0) throw std::invalid_argument("peg count must be >= 0");

    const auto n = static_cast<std::size_t>(opt.runs);
    std::vector<RunSummary> summaries(n);
    std::vector<std::optional<RunResult>> results(n);
    std::vector<std::string> csv(n);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            const std::uint64_t seed = opt.base_seed + i;
            Scenario scenario;
            try {
                scenario = generate_scenario(seed, opt.peg_count, opt.base);
            } catch (const ScenarioError& e) {
                summaries[i].index = static_cast<int>(i);
                summaries[i].seed = seed;
                summaries[i].error = e.what();
                continue;
            }
            SimConfig sim = opt.sim;
            sim.seed = seed;
            RunResult r = run(scenario, opt.calib, opt.channel, sim);
            summaries[i] = summarize(static_cast<int>(i), seed, r);
            csv[i] = trajectory_csv(r.trajectory);
            if (opt.keep_trajectories) results[i] = std::move(r);
        }
    };

    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();

    MonteCarloResult out;
    BatchReport& rep = out.report;
    rep.peg_count = opt.peg_count;
    rep.runs_requested = opt.runs;
    rep.base_seed = opt.base_seed;
    std::vector<double> means;
    for (const RunSummary& s : summaries) {
        if (s.error) {
            ++rep.generation_failures;
            continue;
        }
        rep.histogram.add(s.outcome);
        if (s.iterations > 0) means.push_back(s.progress.mean);
    }
    if (!means.empty()) {
        double sum = 0.0;
        for (double m : means) sum += m;
        rep.progress.mean = sum / static_cast<double>(means.size());
        rep.progress.std = sample_std(means, rep.progress.mean);
    }
    rep.runs = std::move(summaries);
    out.results = std::move(results);
    out.csv = std::move(csv);
    return out;
}

namespace {

double* parameter_slot(RobotCalibration& c, std::string_view name) {
    GaitCalibration& g = c.gait;
    if (name == "extension_gain") return &g.extension_gain;
    if (name == "extension_cap") return &g.extension_cap;
    if (name == "anchor_slip") return &g.anchor_slip;
    if (name == "bend_gain") return &g.bend_gain;
    if (name == "center_pressure") return &g.pressures.center;
    if (name == "back_pressure") return &g.pressures.back;
    if (name == "front_pressure") return &g.pressures.front;
    if (name == "radial_duration") return &g.durations.radial;
    if (name == "center_duration") return &g.durations.center;
    if (name == "max_pressure") return &g.max_pressure;
    return nullptr;
}

}  // namespace

void set_parameter(RobotCalibration& calib, std::string_view name, double value) {
    double* slot = parameter_slot(calib, name);
    if (!slot) throw std::invalid_argument(fmt::format("unknown sweep parameter '{}'", name));
    *slot = value;
}

double get_parameter(const RobotCalibration& calib, std::string_view name) {
    double* slot = parameter_slot(const_cast<RobotCalibration&>(calib), name);
    if (!slot) throw std::invalid_argument(fmt::format("unknown sweep parameter '{}'", name));
    return *slot;
}

SweepResult run_sweep(const SweepSpec& spec, const RobotCalibration& base) {
    RobotCalibration calib = base;
    set_parameter(calib, spec.parameter, get_parameter(base, spec.parameter));  // name check
    if (!(spec.lo < spec.hi)) throw std::invalid_argument("sweep range needs lo < hi");
    if (!(spec.step > 0.0)) throw std::invalid_argument("sweep step must be > 0");

    SweepResult out;
    const double slack = spec.step * 1e-9;
    for (long i = 0;; ++i) {
        const double value = spec.lo + static_cast<double>(i) * spec.step;
        if (value > spec.hi + slack) break;
        set_parameter(calib, spec.parameter, value);
        validate(calib.gait);
        const double objective = forward_displacement(calib.gait);
        out.rows.push_back({value, objective});
        if (out.rows.size() == 1 || objective > out.best.objective) out.best = out.rows.back();
    }
    return out;
}

std::string SweepResult::csv() const {
    std::string s = "value,objective_mm\n";
    for (const SweepRow& r : rows) s += fmt::format("{:.6g},{:.6g}\n", r.value, r.objective);
    return s;
}

double displacement_sensitivity(const RobotCalibration& calib, std::string_view parameter, double h) {
    RobotCalibration up = calib;
    RobotCalibration down = calib;
    const double x = get_parameter(calib, parameter);
    set_parameter(up, parameter, x + h);
    set_parameter(down, parameter, x - h);
    return (forward_displacement(up.gait) - forward_displacement(down.gait)) / (2.0 * h);
}

std::string render_svg(const Scenario& s, const std::vector<std::vector<TrajectoryPoint>>& paths) {
    static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                               "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
    const double w = s.arena.width;
    const double h = s.arena.height;
    auto fy = [h](double y) { return h - y; };  // SVG y grows downward

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"-10 -10 {:.2f} {:.2f}\">\n",
        std::ceil((w + 20.0) / 2.0), std::ceil((h + 20.0) / 2.0), w + 20.0, h + 20.0);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"#f7f5ef\" stroke=\"#333\" "
                       "stroke-width=\"3\"/>\n",
                       w, h);
    for (const Peg& p : s.pegs) {
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"#a0826d\" stroke=\"#5b4636\" "
                           "stroke-width=\"2\"/>\n",
                           p.center.x, fy(p.center.y), p.radius);
    }

    // Light: eight-pointed star.
    std::string star;
    for (int k = 0; k < 16; ++k) {
        const double r = (k % 2 == 0) ? 30.0 : 12.0;
        const double a = k * 3.14159265358979323846 / 8.0;
        star += fmt::format("{}{:.2f},{:.2f}", k ? " " : "", s.light.position.x + r * std::cos(a),
                            fy(s.light.position.y) - r * std::sin(a));
    }
    out += fmt::format("<polygon points=\"{}\" fill=\"#ffd700\" stroke=\"#b8860b\" stroke-width=\"2\"/>\n", star);

    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::string pts;
        for (const TrajectoryPoint& p : paths[i]) {
            if (!pts.empty()) pts += ' ';
            pts += fmt::format("{:.2f},{:.2f}", p.position.x, fy(p.position.y));
        }
        out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"3\"/>\n", pts,
                           kPalette[i % std::size(kPalette)]);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace wormsim
