#pragma once

#include <cstdint>
#include <string>

namespace flownav::world {

enum class TextureKind { uniform, checker, stripes, value_noise };

/// Procedural surface pattern. `period` is the full repeat length in metres
/// (a checker cell is period/2), `contrast` the peak-to-peak spread around
/// mid grey. Identical (kind, period, contrast, seed) always produce
/// bit-identical samples.
struct Texture {
    std::string name;
    TextureKind kind = TextureKind::uniform;
    double period = 1.0;
    double contrast = 0.0;
    std::uint64_t seed = 0;
};

/// Evaluate the pattern at a position `coord` metres along the surface and a
/// vertical fraction `height_frac` in [0,1]. Returns an intensity in [0,1]
/// with mean ~0.5; the uniform kind returns exactly 0.5 everywhere.
double sample_texture(const Texture& tex, double coord, double height_frac);

/// Combine a texture's own seed with a global run seed. Salt 0 is the
/// identity so that serialized scenes round-trip unchanged.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

const char* texture_kind_name(TextureKind kind);
TextureKind texture_kind_from_name(const std::string& name);  // throws ValidationError

}  // namespace flownav::world
