#pragma once

#include "flownav/geometry.hpp"
#include "flownav/grid.hpp"
#include "flownav/world.hpp"

namespace flownav::render {

struct CameraModel {
    double hfov = 1.5707963267948966;  // radians
    int width = 320;
    int height = 200;
    double eye_height = 1.25;  // metres above the floor
};

struct ColorFrame {
    Grid r, g, b;
    double timestamp = 0.0;
};

struct Pose {
    Vec2 position;
    double heading = 0.0;
};

/// Column ray-cast render of the scene: wall slice height falls off with
/// perpendicular distance, floor and ceiling are perspective-sampled from
/// the floor texture, rays that miss everything produce the ambient level.
/// Channels are quantized to 8-bit video levels (k/255), matching a real
/// camera stream; this is what lets very dark walls genuinely lose their
/// features instead of being rescued by later contrast enhancement.
ColorFrame render_frame(const world::WorldScene& scene, const Pose& pose,
                        const CameraModel& camera, double timestamp = 0.0);

}  // namespace flownav::render
