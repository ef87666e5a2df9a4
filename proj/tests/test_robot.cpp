#include <random>

#include "doctest.h"
#include "flownav/robot.hpp"
#include "test_support.hpp"

using namespace flownav;
using namespace flownav::robot;

TEST_CASE("apply_command: straight motion") {
    RobotState s;
    Constraints c;
    auto res = apply_command(s, {0.0, 0.5}, c, LocomotionMode::crab, 0.1);
    CHECK(res.state.position.x == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(res.state.position.y == 0.0);
    CHECK_FALSE(res.lateral_clamped);
    CHECK_FALSE(res.forward_clamped);
}

TEST_CASE("apply_command: lateral clamp to v_side_max") {
    RobotState s;
    Constraints c;
    auto res = apply_command(s, {2.0, 0.5}, c, LocomotionMode::crab, 0.1);
    CHECK(res.state.lateral_velocity == 0.5);
    CHECK(res.lateral_clamped);
    // positive lateral is rightward: heading 0 means -y
    CHECK(res.state.position.y == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("apply_command: forward clamp into [v_min, v_max]") {
    RobotState s;
    Constraints c;
    auto slow = apply_command(s, {0.0, 0.01}, c, LocomotionMode::crab, 0.1);
    CHECK(slow.state.forward_speed == c.v_min);
    CHECK(slow.forward_clamped);
    auto fast = apply_command(s, {0.0, 5.0}, c, LocomotionMode::crab, 0.1);
    CHECK(fast.state.forward_speed == c.v_max);
    CHECK(fast.forward_clamped);
}

TEST_CASE("apply_command: crab mode keeps the heading bit-exact") {
    auto rng = testsupport::test_rng(44);
    std::uniform_real_distribution<double> lat(-1.0, 1.0);
    std::uniform_real_distribution<double> fwd(0.0, 1.5);
    RobotState s;
    s.heading = 0.37;
    Constraints c;
    for (int k = 0; k < 200; ++k) {
        s = apply_command(s, {lat(rng), fwd(rng)}, c, LocomotionMode::crab, 0.1).state;
        CHECK(s.heading == 0.37);
    }
}

TEST_CASE("apply_command: displacement bounded by the constraint envelope") {
    auto rng = testsupport::test_rng(45);
    std::uniform_real_distribution<double> any(-10.0, 10.0);
    Constraints c;
    const double dt = 0.1;
    const double bound = std::sqrt(c.v_max * c.v_max + c.v_side_max * c.v_side_max) * dt;
    for (int k = 0; k < 500; ++k) {
        RobotState s;
        s.heading = any(rng);
        auto res = apply_command(s, {any(rng), any(rng)}, c,
                                 k % 2 ? LocomotionMode::crab : LocomotionMode::realign, dt);
        CHECK(distance(res.state.position, s.position) <= bound + 1e-12);
    }
}

TEST_CASE("apply_command: realign slews toward the velocity direction, bounded") {
    Constraints c;
    RobotState s;
    s.heading = 0.0;
    const double dt = 0.1;
    // full-right command: velocity direction is well below the heading
    for (int k = 0; k < 40; ++k) {
        RobotState prev = s;
        s = apply_command(s, {0.5, 0.5}, c, LocomotionMode::realign, dt).state;
        CHECK(std::abs(s.heading - prev.heading) <= c.heading_slew_max * dt + 1e-12);
    }
    // converged onto the (heading-relative) velocity direction: -pi/4 per step
    CHECK(s.heading < 0.0);
}

TEST_CASE("apply_command: realign with zero lateral keeps heading") {
    Constraints c;
    RobotState s;
    s.heading = 1.1;
    auto res = apply_command(s, {0.0, 0.5}, c, LocomotionMode::realign, 0.1);
    CHECK(res.state.heading == 1.1);
}

TEST_CASE("check_collision: clear corridor centre reports nothing") {
    auto scene = testsupport::corridor_scene(20.0, 2.0);
    RobotState s;
    s.position = {10.0, 0.0};
    Constraints c;
    CHECK_FALSE(check_collision(scene, s, c).has_value());
}

TEST_CASE("check_collision: penetration depth near a wall") {
    auto scene = testsupport::corridor_scene(20.0, 2.0);
    RobotState s;
    s.position = {10.0, 1.9};  // 0.1 m from the left wall
    Constraints c;              // body radius 0.2
    auto contact = check_collision(scene, s, c);
    REQUIRE(contact.has_value());
    CHECK(contact->wall_index == 0);
    CHECK(contact->penetration == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("check_collision: matches the independent distance oracle on random poses") {
    auto rng = testsupport::test_rng(321);
    std::uniform_real_distribution<double> px(-2.0, 22.0);
    std::uniform_real_distribution<double> py(-3.0, 3.0);
    auto scene = testsupport::corridor_scene(20.0, 2.0);
    // add slanted walls so the endpoint cases matter
    scene.walls.push_back({{1.0, 1.0}, {4.0, -1.5}, 0, 1.0, {}});
    scene.walls.push_back({{15.0, -1.0}, {18.0, 1.8}, 0, 1.0, {}});
    Constraints c;

    int contacts = 0;
    for (int q = 0; q < 10000; ++q) {
        RobotState s;
        s.position = {px(rng), py(rng)};
        auto got = check_collision(scene, s, c);

        // oracle: smallest distance over all walls via the case-split form
        double best = 1e300;
        int best_wall = -1;
        for (std::size_t i = 0; i < scene.walls.size(); ++i) {
            double d = testsupport::segment_distance_oracle(s.position, scene.walls[i].p0,
                                                            scene.walls[i].p1);
            if (d < best) {
                best = d;
                best_wall = static_cast<int>(i);
            }
        }
        bool want_contact = best < c.body_radius;
        if (std::abs(best - c.body_radius) < 1e-9) continue;  // fp-boundary pose
        REQUIRE(got.has_value() == want_contact);
        if (got) {
            ++contacts;
            CHECK(got->penetration ==
                  doctest::Approx(c.body_radius - best).epsilon(1e-9));
            CHECK(got->wall_index == best_wall);
        }
    }
    CHECK(contacts > 200);
}
