#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "flownav/flow.hpp"
#include "flownav/geometry.hpp"
#include "flownav/grid.hpp"
#include "flownav/image.hpp"
#include "flownav/world.hpp"

namespace testsupport {

using flownav::Grid;
using flownav::Vec2;

// ---------------------------------------------------------------------------
// Frame synthesis. The noise here is written independently of the production
// texture sampler so warp oracles do not share code with what they test.
// ---------------------------------------------------------------------------

inline double hash01(std::int64_t i, std::int64_t j, std::uint64_t seed) {
    std::uint64_t h = seed * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(i) * 0xC2B2AE3D27D4EB4FULL;
    h ^= static_cast<std::uint64_t>(j) * 0x165667B19E3779F9ULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 32;
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Smooth 2-D value noise sampled on a pixel lattice of the given cell size.
inline double noise2d(double x, double y, double cell, std::uint64_t seed) {
    double u = x / cell;
    double v = y / cell;
    double fu = std::floor(u), fv = std::floor(v);
    auto i = static_cast<std::int64_t>(fu);
    auto j = static_cast<std::int64_t>(fv);
    double tu = u - fu, tv = v - fv;
    tu = tu * tu * (3.0 - 2.0 * tu);
    tv = tv * tv * (3.0 - 2.0 * tv);
    double v00 = hash01(i, j, seed), v10 = hash01(i + 1, j, seed);
    double v01 = hash01(i, j + 1, seed), v11 = hash01(i + 1, j + 1, seed);
    double a = v00 + tu * (v10 - v00);
    double b = v01 + tu * (v11 - v01);
    return a + tv * (b - a);
}

/// Noise frame; content is a pure function of pixel coordinates, so integer
/// warps of the arguments are exact ground-truth displacements.
inline flownav::flow::Frame noise_frame(int w, int h, double cell, std::uint64_t seed,
                                        int shift_x = 0, int shift_y = 0) {
    flownav::flow::Frame f;
    f.g = Grid(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.g.at(x, y) = noise2d(x - shift_x, y - shift_y, cell, seed);
    return f;
}

inline flownav::flow::Frame constant_frame(int w, int h, double value) {
    flownav::flow::Frame f;
    f.g = Grid(w, h, value);
    return f;
}

/// Binary checker smoothed by one [1 2 1]/4 pass per axis; band-limits the
/// edges so derivative stencils see them. shift_x displaces the content.
inline flownav::flow::Frame smoothed_checker_frame(int w, int h, int cell, int shift_x) {
    auto raw = [&](int x, int y) {
        auto fl = [](int a, int c) { return a >= 0 ? a / c : -((-a - 1) / c) - 1; };
        return ((fl(x, cell) + fl(y, cell)) & 1) ? 0.2 : 0.8;
    };
    Grid tmp(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.25 * raw(x - 1 - shift_x, y) + 0.5 * raw(x - shift_x, y) +
                       0.25 * raw(x + 1 - shift_x, y);
            tmp.at(x, y) = s;
        }
    flownav::flow::Frame f;
    f.g = Grid(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.g.at(x, y) = 0.25 * tmp.at_clamped(x, y - 1) + 0.5 * tmp.at(x, y) +
                           0.25 * tmp.at_clamped(x, y + 1);
    return f;
}

inline flownav::flow::Frame mirror_frame(const flownav::flow::Frame& f) {
    flownav::flow::Frame out = f;
    for (int y = 0; y < f.g.height; ++y)
        for (int x = 0; x < f.g.width; ++x)
            out.g.at(x, y) = f.g.at(f.g.width - 1 - x, y);
    return out;
}

// ---------------------------------------------------------------------------
// Independent geometric oracles (formulated differently from production).
// ---------------------------------------------------------------------------

/// Ray-vs-all-segments by line-normal projection instead of the production
/// cross-product parametric solve.
inline std::optional<flownav::world::Hit> ray_oracle(const flownav::world::WorldScene& scene,
                                                     Vec2 origin, Vec2 dir) {
    std::optional<flownav::world::Hit> best;
    for (std::size_t i = 0; i < scene.walls.size(); ++i) {
        const auto& wall = scene.walls[i];
        Vec2 seg = wall.p1 - wall.p0;
        Vec2 n{-seg.y, seg.x};  // wall-line normal
        double denom = flownav::dot(dir, n);
        if (std::abs(denom) < 1e-15) continue;
        double t = flownav::dot(wall.p0 - origin, n) / denom;
        if (t <= 1e-12) continue;
        Vec2 hit_point = origin + t * dir;
        double u = flownav::dot(hit_point - wall.p0, seg) / flownav::dot(seg, seg);
        if (u < 0.0 || u > 1.0) continue;
        if (!best || t < best->distance)
            best = flownav::world::Hit{t, u * flownav::norm(seg), static_cast<int>(i)};
    }
    return best;
}

/// Point-to-segment distance by explicit endpoint/perpendicular case split.
inline double segment_distance_oracle(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double along = flownav::dot(p - a, ab);
    if (along <= 0.0) return flownav::distance(p, a);
    double len2 = flownav::dot(ab, ab);
    if (along >= len2) return flownav::distance(p, b);
    return std::abs(flownav::cross(ab, p - a)) / std::sqrt(len2);
}

// ---------------------------------------------------------------------------
// Discrete Horn-Schunck objective for the descent property:
//   E = sum (Ix u + Iy v + It)^2
//     + alpha^2/4 * sum over in-bounds 4-neighbour pairs of (du^2 + dv^2)
// (each undirected edge counted once). The production sweep is an exact
// block-Jacobi step of this functional, so E must not increase.
// ---------------------------------------------------------------------------

inline double hs_energy(const flownav::flow::Gradients& g, const flownav::flow::FlowField& f,
                        double alpha) {
    const int w = g.ix.width, h = g.ix.height;
    double data = 0.0, smooth = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double r = g.ix.at(x, y) * f.u.at(x, y) + g.iy.at(x, y) * f.v.at(x, y) +
                       g.it.at(x, y);
            data += r * r;
            if (x + 1 < w) {
                double du = f.u.at(x, y) - f.u.at(x + 1, y);
                double dv = f.v.at(x, y) - f.v.at(x + 1, y);
                smooth += du * du + dv * dv;
            }
            if (y + 1 < h) {
                double du = f.u.at(x, y) - f.u.at(x, y + 1);
                double dv = f.v.at(x, y) - f.v.at(x, y + 1);
                smooth += du * du + dv * dv;
            }
        }
    }
    return data + 0.25 * alpha * alpha * smooth;
}

/// Two-wall corridor along +x, y = +/- half_width, plus a value-noise texture.
inline flownav::world::WorldScene corridor_scene(double length, double half_width,
                                                 double contrast = 0.9) {
    flownav::world::WorldScene scene;
    flownav::world::Texture tex;
    tex.name = "walls";
    tex.kind = flownav::world::TextureKind::value_noise;
    tex.period = 0.5;
    tex.contrast = contrast;
    tex.seed = 7;
    scene.textures.push_back(tex);
    flownav::world::Texture floor;
    floor.name = "floor";
    floor.kind = flownav::world::TextureKind::checker;
    floor.period = 1.0;
    floor.contrast = 0.6;
    scene.textures.push_back(floor);
    scene.floor_texture_id = 1;
    scene.walls.push_back({{0.0, half_width}, {length, half_width}, 0, 1.0, {}});
    scene.walls.push_back({{0.0, -half_width}, {length, -half_width}, 0, 1.0, {}});
    return scene;
}

inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace testsupport
