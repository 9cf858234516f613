#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wormsim/geometry.hpp"

namespace wormsim {

inline constexpr double kDefaultKeepOut = 150.0;
inline constexpr double kDefaultPegSeparation = 150.0;
inline constexpr double kDefaultPegRadius = 37.5;

/// The static world: arena, fixed pegs, light, start pose.
struct Scenario {
    Arena arena;
    std::vector<Peg> pegs;
    LightSource light{{1300.0, 455.0}, 1.0e6};
    Pose start{{200.0, 455.0}, 0.0};
    double reach_radius = 100.0;

    bool operator==(const Scenario&) const = default;
};

/// Raised for schema or invariant violations. `field()` names the offending
/// item, e.g. "pegs[3]" or "arena.width".
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Malformed JSON text. `byte_offset()` points at the failure.
class ScenarioParseError : public ScenarioError {
public:
    ScenarioParseError(std::size_t offset, const std::string& what)
        : ScenarioError("", "parse error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

    std::size_t byte_offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Throws ScenarioError on the first violated invariant.
void validate(const Scenario& scenario, double keep_out = kDefaultKeepOut);

/// Non-throwing variant; returns the error message of the first violation.
std::optional<std::string> check_invariants(const Scenario& scenario, double keep_out = kDefaultKeepOut);

struct GeneratorOptions {
    double peg_radius = kDefaultPegRadius;
    double min_separation = kDefaultPegSeparation;  // center to center
    double keep_out = kDefaultKeepOut;              // from peg surface to start and light
    int max_attempts = 10'000;                      // per peg
};

/// Rejection-samples `peg_count` pegs into `base`, which must have no pegs.
/// Throws ScenarioError("pegs", "over-dense scenario ...") when a peg cannot be placed.
Scenario generate_scenario(std::uint64_t seed, int peg_count, const Scenario& base,
                           const GeneratorOptions& options = {});

Scenario load_scenario(std::string_view json_text);
std::string save_scenario(const Scenario& scenario);

Scenario read_scenario_file(const std::string& path);
void write_scenario_file(const Scenario& scenario, const std::string& path);

}  // namespace wormsim
