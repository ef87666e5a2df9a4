#include "flownav/world.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "flownav/errors.hpp"

namespace flownav::world {

namespace {
constexpr double kMinWallLength = 1e-9;
constexpr double kParallelEps = 1e-15;
constexpr double kMinRayAdvance = 1e-12;
}  // namespace

void validate(const WorldScene& scene) {
    for (std::size_t i = 0; i < scene.walls.size(); ++i) {
        const WallSegment& w = scene.walls[i];
        if (distance(w.p0, w.p1) <= kMinWallLength)
            throw ValidationError("wall " + std::to_string(i) + ": zero length");
        if (w.brightness < 0.0 || w.brightness > 1.0)
            throw ValidationError("wall " + std::to_string(i) + ": brightness outside [0,1]");
        if (w.texture_id < 0 || w.texture_id >= static_cast<int>(scene.textures.size()))
            throw ValidationError("wall " + std::to_string(i) + ": texture id " +
                                  std::to_string(w.texture_id) + " out of range (" +
                                  std::to_string(scene.textures.size()) + " textures)");
    }
    for (std::size_t i = 0; i < scene.scripts.size(); ++i) {
        const DynamicScript& s = scene.scripts[i];
        if (s.wall_index < 0 || s.wall_index >= static_cast<int>(scene.walls.size()))
            throw ValidationError("script " + std::to_string(i) + ": wall index " +
                                  std::to_string(s.wall_index) + " out of range (" +
                                  std::to_string(scene.walls.size()) + " walls)");
        if (s.waypoints.empty())
            throw ValidationError("script " + std::to_string(i) + ": no waypoints");
        if (s.speed < 0.0)
            throw ValidationError("script " + std::to_string(i) + ": negative speed");
    }
    for (std::size_t i = 0; i < scene.textures.size(); ++i) {
        const Texture& t = scene.textures[i];
        if (t.period <= 0.0)
            throw ValidationError("texture " + std::to_string(i) + ": period must be > 0");
        if (t.contrast < 0.0 || t.contrast > 1.0)
            throw ValidationError("texture " + std::to_string(i) + ": contrast outside [0,1]");
        if (t.kind == TextureKind::uniform && t.contrast != 0.0)
            throw ValidationError("texture " + std::to_string(i) +
                                  ": uniform kind has contrast 0 by definition");
    }
    if (scene.floor_texture_id >= static_cast<int>(scene.textures.size()))
        throw ValidationError("floor texture id out of range");
    if (scene.ambient_level < 0.0 || scene.ambient_level > 1.0)
        throw ValidationError("ambient level outside [0,1]");
    if (scene.wall_height <= 0.0) throw ValidationError("wall height must be > 0");
}

Vec2 script_displacement(const DynamicScript& script, double s) {
    // Polyline origin -> w1 -> w2 -> ... -> wn (looping closes back to origin).
    std::vector<Vec2> pts;
    pts.reserve(script.waypoints.size() + 2);
    pts.push_back({0.0, 0.0});
    for (const Vec2& w : script.waypoints) pts.push_back(w);
    if (script.loop) pts.push_back({0.0, 0.0});

    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
    if (total <= 0.0) return {0.0, 0.0};

    if (script.loop) {
        s = std::fmod(s, total);
        if (s < 0.0) s += total;
    } else {
        s = std::clamp(s, 0.0, total);
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double leg = distance(pts[i - 1], pts[i]);
        if (s <= leg || i + 1 == pts.size()) {
            double f = leg > 0.0 ? s / leg : 0.0;
            return pts[i - 1] + f * (pts[i] - pts[i - 1]);
        }
        s -= leg;
    }
    return pts.back();
}

WorldScene step_world(const WorldScene& scene, double t, double dt) {
    if (dt <= 0.0) throw ValidationError("step_world: dt must be > 0");
    WorldScene next = scene;
    for (const DynamicScript& script : scene.scripts) {
        Vec2 delta = script_displacement(script, script.speed * (t + dt)) -
                     script_displacement(script, script.speed * t);
        WallSegment& w = next.walls[script.wall_index];
        w.p0 = w.p0 + delta;
        w.p1 = w.p1 + delta;
    }
    return next;
}

std::optional<Hit> cast_ray(const WorldScene& scene, Vec2 origin, Vec2 direction) {
    std::optional<Hit> best;
    for (std::size_t i = 0; i < scene.walls.size(); ++i) {
        const WallSegment& wall = scene.walls[i];
        Vec2 seg = wall.p1 - wall.p0;
        double denom = cross(direction, seg);
        if (std::abs(denom) < kParallelEps) continue;
        Vec2 w = wall.p0 - origin;
        double t = cross(w, seg) / denom;
        double u = cross(w, direction) / denom;
        if (t <= kMinRayAdvance || u < 0.0 || u > 1.0) continue;
        if (!best || t < best->distance)
            best = Hit{t, u * norm(seg), static_cast<int>(i)};
    }
    return best;
}

}  // namespace flownav::world
