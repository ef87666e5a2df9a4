#pragma once

#include <string>

#include "flownav/flow.hpp"
#include "flownav/render.hpp"

namespace flownav::imageio {

/// Binary PGM (P5), 8-bit, intensities clamped to [0,1].
void write_pgm(const std::string& path, const Grid& g);

/// Binary PPM (P6), 8-bit per channel.
void write_ppm(const std::string& path, const render::ColorFrame& frame);

/// Flow dump: text header "FLO2\n<width> <height>\n" followed by the u grid
/// then the v grid as little-endian 32-bit floats, row-major.
void write_flo2(const std::string& path, const flow::FlowField& field);
flow::FlowField read_flo2(const std::string& path);

}  // namespace flownav::imageio
