#pragma once

#include <optional>
#include <vector>

#include "flownav/geometry.hpp"
#include "flownav/texture.hpp"

namespace flownav::world {

/// Luma-neutral colour cast applied by the renderer; grayscale conversion
/// recovers the underlying intensity to within clipping.
struct Tint {
    double r = 1.0;
    double g = 1.0;
    double b = 1.0;
};

/// Vertical extruded wall from p0 to p1 (2.5-D world: all walls share the
/// scene wall height). brightness near 0 models a featureless dark surface.
struct WallSegment {
    Vec2 p0;
    Vec2 p1;
    int texture_id = 0;
    double brightness = 1.0;
    Tint tint;
};

/// Pure-translation motion of one wall along a waypoint polyline. Waypoints
/// are displacements from the authored pose; the path starts at the origin.
/// loop=false scripts hold position past the final waypoint.
struct DynamicScript {
    int wall_index = 0;
    std::vector<Vec2> waypoints;
    double speed = 0.0;
    bool loop = false;
};

struct WorldScene {
    std::vector<WallSegment> walls;
    std::vector<DynamicScript> scripts;
    std::vector<Texture> textures;
    int floor_texture_id = -1;  // -1: renderer falls back to a flat mid grey
    double ambient_level = 0.35;
    double wall_height = 2.5;
};

struct Hit {
    double distance;       // metres from the ray origin
    double texture_coord;  // metres along the wall from p0
    int wall_index;
};

/// Throws ValidationError naming the offending entity.
void validate(const WorldScene& scene);

/// Advance scripted walls from time t to t+dt. Pure: unscripted walls are
/// untouched and the input scene is not modified. Translation only, so wall
/// lengths are preserved exactly.
WorldScene step_world(const WorldScene& scene, double t, double dt);

/// Displacement of a script's polyline at path position `s` metres (clamped
/// or wrapped according to loop). Exposed for tests.
Vec2 script_displacement(const DynamicScript& script, double s);

/// Nearest wall intersection of the ray origin + t*direction (direction must
/// be unit length). Ties are broken toward the lowest wall index.
std::optional<Hit> cast_ray(const WorldScene& scene, Vec2 origin, Vec2 direction);

}  // namespace flownav::world
