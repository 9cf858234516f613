#include "wormsim/scenario.hpp"

#include <cmath>
#include <fmt/format.h>
#include "json.hpp"
#include <set>

#include "wormsim/io.hpp"
#include "wormsim/rng.hpp"

namespace wormsim {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string num(double v) { return fmt::format("{}", v); }

std::string check(const Scenario& s, double keep_out) {
    const auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!finite_pos(s.arena.width)) return "arena.width: must be a positive finite number";
    if (!finite_pos(s.arena.height)) return "arena.height: must be a positive finite number";
    if (!finite_pos(s.reach_radius)) return "reach_radius: must be a positive finite number";
    if (!finite_pos(s.light.power)) return "light.power: must be a positive finite number";
    if (!s.light.position.finite() || !s.arena.contains(s.light.position))
        return "light: position must lie inside the arena";
    if (!s.start.position.finite() || !s.arena.contains(s.start.position))
        return "start: position must lie inside the arena";
    if (!std::isfinite(s.start.heading)) return "start.theta_deg: must be finite";

    for (std::size_t i = 0; i < s.pegs.size(); ++i) {
        const Peg& peg = s.pegs[i];
        const std::string name = fmt::format("pegs[{}]", i);
        if (!peg.center.finite()) return name + ": center must be finite";
        if (!finite_pos(peg.radius)) return name + ": radius must be a positive finite number";
        if (peg.center.x - peg.radius < 0.0 || peg.center.x + peg.radius > s.arena.width ||
            peg.center.y - peg.radius < 0.0 || peg.center.y + peg.radius > s.arena.height)
            return name + ": peg disk extends outside the arena";
        for (std::size_t j = 0; j < i; ++j) {
            if (disk_contact(peg.center, peg.radius, s.pegs[j].center, s.pegs[j].radius))
                return name + fmt::format(": overlaps pegs[{}]", j);
        }
        const double to_start = distance(peg.center, s.start.position) - peg.radius;
        if (to_start < keep_out)
            return name + ": within start keep-out (" + num(to_start) + " mm < " + num(keep_out) + " mm)";
        const double to_light = distance(peg.center, s.light.position) - peg.radius;
        if (to_light < keep_out)
            return name + ": within light keep-out (" + num(to_light) + " mm < " + num(keep_out) + " mm)";
    }
    return {};
}

std::string field_of(const std::string& message) {
    const auto colon = message.find(':');
    return colon == std::string::npos ? std::string{} : message.substr(0, colon);
}

// Strict object reader: every key must be known and every listed key present.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path, std::initializer_list<const char*> keys)
        : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ScenarioError(path_, "expected an object");
        std::set<std::string> known(keys.begin(), keys.end());
        for (const auto& [key, _] : j_.items()) {
            if (!known.contains(key)) throw ScenarioError(child(key), "unknown field");
        }
    }

    const json& at(const char* key) const {
        auto it = j_.find(key);
        if (it == j_.end()) throw ScenarioError(child(key), "missing required field");
        return *it;
    }

    double number(const char* key) const {
        const json& v = at(key);
        if (!v.is_number()) throw ScenarioError(child(key), "expected a number");
        return v.get<double>();
    }

    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const json& j_;
    std::string path_;
};

}  // namespace

std::optional<std::string> check_invariants(const Scenario& scenario, double keep_out) {
    std::string message = check(scenario, keep_out);
    if (message.empty()) return std::nullopt;
    return message;
}

void validate(const Scenario& scenario, double keep_out) {
    std::string message = check(scenario, keep_out);
    if (message.empty()) return;
    std::string field = field_of(message);
    throw ScenarioError(field, message.substr(field.size() + 2));
}

Scenario generate_scenario(std::uint64_t seed, int peg_count, const Scenario& base, const GeneratorOptions& options) {
    if (peg_count < 0) throw ScenarioError("peg_count", "must be >= 0");
    if (!base.pegs.empty()) throw ScenarioError("pegs", "template scenario must have no pegs");
    validate(base, options.keep_out);

    Scenario out = base;
    Rng rng(seed);
    const double r = options.peg_radius;
    if (2.0 * r >= out.arena.width || 2.0 * r >= out.arena.height)
        throw ScenarioError("pegs", "over-dense scenario: peg does not fit in arena");

    for (int placed = 0; placed < peg_count; ++placed) {
        bool ok = false;
        for (int attempt = 0; attempt < options.max_attempts && !ok; ++attempt) {
            const Vec2 c{rng.uniform(r, out.arena.width - r), rng.uniform(r, out.arena.height - r)};
            if (distance(c, out.start.position) - r < options.keep_out) continue;
            if (distance(c, out.light.position) - r < options.keep_out) continue;
            bool clear = true;
            for (const Peg& other : out.pegs) {
                if (distance(c, other.center) < options.min_separation ||
                    disk_contact(c, r, other.center, other.radius)) {
                    clear = false;
                    break;
                }
            }
            if (!clear) continue;
            out.pegs.push_back({c, r});
            ok = true;
        }
        if (!ok)
            throw ScenarioError("pegs", fmt::format("over-dense scenario: could not place peg {} of {} after {} attempts",
                                                    placed + 1, peg_count, options.max_attempts));
    }
    return out;
}

Scenario load_scenario(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(e.byte, e.what());
    }

    Scenario s;
    ObjectReader top(root, "", {"arena", "light", "start", "reach_radius", "pegs"});

    ObjectReader arena(top.at("arena"), "arena", {"width", "height"});
    s.arena = {arena.number("width"), arena.number("height")};

    ObjectReader light(top.at("light"), "light", {"x", "y", "power"});
    s.light = {{light.number("x"), light.number("y")}, light.number("power")};

    ObjectReader start(top.at("start"), "start", {"x", "y", "theta_deg"});
    s.start = Pose({start.number("x"), start.number("y")}, deg_to_rad(start.number("theta_deg")));

    s.reach_radius = top.number("reach_radius");

    const json& pegs = top.at("pegs");
    if (!pegs.is_array()) throw ScenarioError("pegs", "expected an array");
    for (std::size_t i = 0; i < pegs.size(); ++i) {
        ObjectReader peg(pegs[i], fmt::format("pegs[{}]", i), {"x", "y", "r"});
        s.pegs.push_back({{peg.number("x"), peg.number("y")}, peg.number("r")});
    }

    validate(s);
    return s;
}

std::string save_scenario(const Scenario& s) {
    ordered_json root;
    root["arena"] = {{"width", s.arena.width}, {"height", s.arena.height}};
    root["light"] = {{"x", s.light.position.x}, {"y", s.light.position.y}, {"power", s.light.power}};
    root["start"] = {{"x", s.start.position.x}, {"y", s.start.position.y}, {"theta_deg", rad_to_deg(s.start.heading)}};
    root["reach_radius"] = s.reach_radius;
    ordered_json pegs = ordered_json::array();
    for (const Peg& p : s.pegs) pegs.push_back({{"x", p.center.x}, {"y", p.center.y}, {"r", p.radius}});
    root["pegs"] = std::move(pegs);
    return root.dump(2) + "\n";
}

Scenario read_scenario_file(const std::string& path) { return load_scenario(read_text_file(path)); }

void write_scenario_file(const Scenario& scenario, const std::string& path) {
    write_text_file(path, save_scenario(scenario));
}

}  // namespace wormsim
