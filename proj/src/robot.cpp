#include "flownav/robot.hpp"

#include <algorithm>
#include <cmath>

#include "flownav/errors.hpp"

namespace flownav::robot {

ApplyResult apply_command(const RobotState& state, const fuzzy::Command& cmd,
                          const Constraints& constraints, LocomotionMode mode, double dt) {
    if (dt <= 0.0) throw ValidationError("apply_command: dt must be > 0");

    ApplyResult res;
    double lateral = std::clamp(cmd.lateral_velocity, -constraints.v_side_max,
                                constraints.v_side_max);
    double forward = std::clamp(cmd.forward_speed, constraints.v_min, constraints.v_max);
    res.lateral_clamped = lateral != cmd.lateral_velocity;
    res.forward_clamped = forward != cmd.forward_speed;

    Vec2 fwd = heading_vector(state.heading);
    Vec2 right{fwd.y, -fwd.x};
    Vec2 velocity = forward * fwd + lateral * right;

    res.state = state;
    res.state.position = state.position + dt * velocity;
    res.state.forward_speed = forward;
    res.state.lateral_velocity = lateral;

    if (mode == LocomotionMode::realign && (velocity.x != 0.0 || velocity.y != 0.0)) {
        double target = std::atan2(velocity.y, velocity.x);
        double delta = wrap_angle(target - state.heading);
        double max_step = constraints.heading_slew_max * dt;
        res.state.heading = state.heading + std::clamp(delta, -max_step, max_step);
    }
    return res;
}

std::optional<Contact> check_collision(const world::WorldScene& scene, const RobotState& state,
                                       const Constraints& constraints) {
    std::optional<Contact> deepest;
    for (std::size_t i = 0; i < scene.walls.size(); ++i) {
        const world::WallSegment& w = scene.walls[i];
        double d = point_segment_distance(state.position, w.p0, w.p1);
        if (d < constraints.body_radius) {
            double pen = constraints.body_radius - d;
            if (!deepest || pen > deepest->penetration)
                deepest = Contact{static_cast<int>(i), pen};
        }
    }
    return deepest;
}

const char* locomotion_mode_name(LocomotionMode mode) {
    return mode == LocomotionMode::crab ? "crab" : "realign";
}

LocomotionMode locomotion_mode_from_name(const std::string& name) {
    if (name == "crab") return LocomotionMode::crab;
    if (name == "realign") return LocomotionMode::realign;
    throw ValidationError("unknown locomotion mode '" + name + "' (crab|realign)");
}

}  // namespace flownav::robot
