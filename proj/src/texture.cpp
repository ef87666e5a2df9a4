#include "flownav/texture.hpp"

#include <cmath>

#include "flownav/errors.hpp"

namespace flownav::world {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Lattice hash in [0,1), stable across platforms.
double lattice_value(std::int64_t i, std::int64_t j, std::uint64_t seed) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)) ^
                                 (splitmix64(static_cast<std::uint64_t>(j)) << 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double fade(double t) { return t * t * (3.0 - 2.0 * t); }

/// Smoothed bilinear value noise over a half-period lattice. The vertical
/// lattice wraps modulo 2 so wall top and floor seams line up.
double value_noise(double u, double v, std::uint64_t seed) {
    double fu = std::floor(u);
    double fv = std::floor(v);
    auto i = static_cast<std::int64_t>(fu);
    auto j = static_cast<std::int64_t>(fv);
    double tu = fade(u - fu);
    double tv = fade(v - fv);
    auto wrap2 = [](std::int64_t k) { return ((k % 2) + 2) % 2; };
    double v00 = lattice_value(i, wrap2(j), seed);
    double v10 = lattice_value(i + 1, wrap2(j), seed);
    double v01 = lattice_value(i, wrap2(j + 1), seed);
    double v11 = lattice_value(i + 1, wrap2(j + 1), seed);
    double top = v00 + tu * (v10 - v00);
    double bot = v01 + tu * (v11 - v01);
    return top + tv * (bot - top);
}

int cell_index(double x, double cell) {
    return static_cast<int>(static_cast<std::int64_t>(std::floor(x / cell)) & 1);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    if (salt == 0) return seed;
    return splitmix64(seed ^ splitmix64(salt));
}

double sample_texture(const Texture& tex, double coord, double height_frac) {
    double half = 0.5 * tex.period;  // one checker cell / stripe width
    switch (tex.kind) {
        case TextureKind::uniform:
            return 0.5;
        case TextureKind::checker: {
            int band = height_frac < 0.5 ? 0 : 1;
            int parity = (cell_index(coord, half) + band) & 1;
            return parity ? 0.5 - 0.5 * tex.contrast : 0.5 + 0.5 * tex.contrast;
        }
        case TextureKind::stripes: {
            int parity = cell_index(coord, half);
            return parity ? 0.5 - 0.5 * tex.contrast : 0.5 + 0.5 * tex.contrast;
        }
        case TextureKind::value_noise: {
            double n = value_noise(coord / half, 2.0 * height_frac, tex.seed);
            return 0.5 + tex.contrast * (n - 0.5);
        }
    }
    return 0.5;
}

const char* texture_kind_name(TextureKind kind) {
    switch (kind) {
        case TextureKind::uniform: return "uniform";
        case TextureKind::checker: return "checker";
        case TextureKind::stripes: return "stripes";
        case TextureKind::value_noise: return "value_noise";
    }
    return "uniform";
}

TextureKind texture_kind_from_name(const std::string& name) {
    if (name == "uniform") return TextureKind::uniform;
    if (name == "checker") return TextureKind::checker;
    if (name == "stripes") return TextureKind::stripes;
    if (name == "value_noise") return TextureKind::value_noise;
    throw ValidationError("unknown texture kind '" + name + "'");
}

}  // namespace flownav::world
