#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace flownav {

/// Row-major scalar raster. Shared currency of frames, flow components and
/// gradient images.
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    /// Replicated-border access: indices are clamped into range.
    double at_clamped(int x, int y) const {
        x = std::clamp(x, 0, width - 1);
        y = std::clamp(y, 0, height - 1);
        return at(x, y);
    }

    std::size_t size() const { return data.size(); }
    bool same_shape(const Grid& o) const { return width == o.width && height == o.height; }
};

}  // namespace flownav
