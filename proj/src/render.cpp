#include "flownav/render.hpp"

#include <cmath>

#include "flownav/errors.hpp"

namespace flownav::render {

namespace {

constexpr double kMaxViewDistance = 1e4;  // beyond this, floor fades to ambient

double quantize8(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return std::round(c * 255.0) / 255.0;
}

double floor_sample(const world::WorldScene& scene, Vec2 p) {
    if (scene.floor_texture_id < 0) return 0.5;
    const world::Texture& tex = scene.textures[scene.floor_texture_id];
    double cycles = p.y / tex.period;
    double hf = cycles - std::floor(cycles);
    return world::sample_texture(tex, p.x, hf);
}

}  // namespace

ColorFrame render_frame(const world::WorldScene& scene, const Pose& pose,
                        const CameraModel& camera, double timestamp) {
    if (camera.width <= 0 || camera.height <= 0)
        throw ValidationError("camera: non-positive resolution");
    if (!(camera.hfov > 0.0) || !(camera.hfov < 3.14159265358979323846))
        throw ValidationError("camera: hfov outside (0, pi)");

    const int w = camera.width;
    const int h = camera.height;
    ColorFrame frame{Grid(w, h), Grid(w, h), Grid(w, h), timestamp};

    const double half_tan = std::tan(0.5 * camera.hfov);
    const double focal = (0.5 * w) / half_tan;  // square pixels
    const double cy = 0.5 * h;
    const Vec2 fwd = heading_vector(pose.heading);
    const Vec2 right{fwd.y, -fwd.x};
    const double eye = camera.eye_height;
    const double wall_h = scene.wall_height;

    const double col_scale = 2.0 * half_tan / w;
    for (int col = 0; col < w; ++col) {
        // Lateral slope of this column's ray per unit forward travel. The
        // offset form is exactly antisymmetric about the image centre, which
        // makes scene mirror symmetry hold bit-for-bit.
        const double s = (col + 0.5 - 0.5 * w) * col_scale;
        const Vec2 ray2 = fwd + s * right;
        const double inv_stretch = 1.0 / std::sqrt(1.0 + s * s);
        auto hit = world::cast_ray(scene, pose.position, inv_stretch * ray2);

        double wall_perp = -1.0;
        double wall_shade = 0.0;
        world::Tint wall_tint;
        if (hit) {
            wall_perp = hit->distance * inv_stretch;  // distance along the camera axis
        }

        for (int row = 0; row < h; ++row) {
            const double zeta = (cy - (row + 0.5)) / focal;  // vertical slope, + up
            double shade;
            world::Tint tint;

            double z_wall = hit ? eye + zeta * wall_perp : -1.0;
            if (hit && z_wall >= 0.0 && z_wall <= wall_h) {
                const world::WallSegment& wall = scene.walls[hit->wall_index];
                const world::Texture& tex = scene.textures[wall.texture_id];
                wall_shade = world::sample_texture(tex, hit->texture_coord, z_wall / wall_h) *
                             wall.brightness;
                wall_tint = wall.tint;
                shade = wall_shade;
                tint = wall_tint;
            } else {
                // Floor below the horizon, ceiling above, ambient on it.
                double plane_dist = 0.0;
                bool has_plane = false;
                if (zeta < 0.0) {
                    plane_dist = -eye / zeta;
                    has_plane = true;
                } else if (zeta > 0.0) {
                    plane_dist = (wall_h - eye) / zeta;
                    has_plane = plane_dist > 0.0;
                }
                if (has_plane && plane_dist <= kMaxViewDistance &&
                    (!hit || plane_dist < wall_perp)) {
                    Vec2 p = pose.position + plane_dist * ray2;
                    shade = floor_sample(scene, p);
                    tint = world::Tint{};
                } else {
                    shade = scene.ambient_level;
                    tint = world::Tint{};
                }
            }

            frame.r.at(col, row) = quantize8(shade * tint.r);
            frame.g.at(col, row) = quantize8(shade * tint.g);
            frame.b.at(col, row) = quantize8(shade * tint.b);
        }
    }
    return frame;
}

}  // namespace flownav::render
