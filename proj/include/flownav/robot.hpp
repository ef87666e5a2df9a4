#pragma once

#include <optional>

#include "flownav/fuzzy.hpp"
#include "flownav/geometry.hpp"
#include "flownav/world.hpp"

namespace flownav::robot {

struct RobotState {
    Vec2 position;
    double heading = 0.0;          // radians
    double forward_speed = 0.0;    // m/s, applied last step
    double lateral_velocity = 0.0; // m/s, applied last step
};

struct Constraints {
    double v_min = 0.1;
    double v_max = 1.0;
    double v_side_max = 0.5;
    double heading_slew_max = 1.0;  // rad/s (realign mode)
    double body_radius = 0.2;
};

/// crab: pure side translation with fixed heading (omnidirectional robot,
/// no rotational flow). realign: heading slews toward the velocity vector
/// by at most heading_slew_max * dt per step.
enum class LocomotionMode { crab, realign };

struct ApplyResult {
    RobotState state;
    bool lateral_clamped = false;
    bool forward_clamped = false;
};

/// Clamp the command into the constraints and advance the pose by
/// (forward * forward_unit + lateral * right_unit) * dt.
ApplyResult apply_command(const RobotState& state, const fuzzy::Command& cmd,
                          const Constraints& constraints, LocomotionMode mode, double dt);

struct Contact {
    int wall_index;
    double penetration;  // metres
};

/// Deepest wall within body_radius of the position, or nullopt. Ties go to
/// the lowest wall index.
std::optional<Contact> check_collision(const world::WorldScene& scene, const RobotState& state,
                                       const Constraints& constraints);

const char* locomotion_mode_name(LocomotionMode mode);
LocomotionMode locomotion_mode_from_name(const std::string& name);  // throws ValidationError

}  // namespace flownav::robot
