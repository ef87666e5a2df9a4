#pragma once

#include "flownav/grid.hpp"
#include "flownav/render.hpp"

namespace flownav::flow {

/// Grayscale camera frame, intensities in [0,1].
struct Frame {
    Grid g;
    double timestamp = 0.0;
};

enum class EnhanceMode { none, stretch, equalize, both };

/// ITU BT.601 luma: 0.299 r + 0.587 g + 0.114 b.
Frame to_grayscale(const render::ColorFrame& color);

/// stretch: linear map of the [p1, p99] percentile range onto [0,1], clamped.
/// equalize: 256-bin cumulative-histogram remap.
/// both: stretch then equalize. Constant frames pass through unchanged.
Frame enhance(const Frame& frame, EnhanceMode mode);

const char* enhance_mode_name(EnhanceMode mode);
EnhanceMode enhance_mode_from_name(const std::string& name);  // throws ValidationError

}  // namespace flownav::flow
