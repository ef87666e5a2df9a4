#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flownav/flow.hpp"
#include "flownav/fuzzy.hpp"
#include "flownav/render.hpp"
#include "flownav/robot.hpp"
#include "flownav/world.hpp"

namespace flownav {

/// Loop configuration from the [sim] section.
struct SimConfig {
    double dt = 0.1;  // 10 Hz control/frame rate
    int steps = 1;
    flow::FlowParams flow_params;
    flow::EnhanceMode enhance = flow::EnhanceMode::both;
    std::uint64_t seed = 0;  // texture salt; 0 keeps authored seeds as-is
    int command_delay = 0;   // actuation delay in whole steps
};

/// Reference line for the centring metrics.
struct Axis {
    Vec2 p0;
    Vec2 p1;
};

/// Named span [start, end) of axis arc length, for per-segment speed means.
struct SegmentSpan {
    std::string name;
    double start = 0.0;
    double end = 0.0;
};

enum class Side { left, right };

/// Everything a run needs: the world plus robot, controller, camera and
/// loop configuration, and the metric declarations.
struct Scenario {
    std::string name;
    world::WorldScene scene;
    render::CameraModel camera;
    robot::RobotState start;
    robot::Constraints constraints;
    robot::LocomotionMode mode = robot::LocomotionMode::crab;
    fuzzy::ControllerConfig controller;
    SimConfig config;
    std::optional<Axis> axis;
    std::vector<SegmentSpan> segments;
    std::optional<Side> opening_side;
};

/// Parse and validate a scenario file ([wall]/[texture]/[script]/[robot]/
/// [controller]/[sim] sections of `key = value` lines, `#` comments).
/// Throws IoError if unreadable, ParseError with the line number on bad
/// syntax, ValidationError naming the offending entity otherwise.
Scenario load_scenario(const std::string& path);

/// Same grammar from a stream; `name` is used in messages.
Scenario parse_scenario(std::istream& in, const std::string& name);

/// Canonical text form of the world geometry ([texture]/[wall]/[script]
/// sections only) with full-precision numbers; parsing it back yields an
/// identical scene.
std::string serialize_scene(const world::WorldScene& scene);

bool scene_equal(const world::WorldScene& a, const world::WorldScene& b);

}  // namespace flownav
