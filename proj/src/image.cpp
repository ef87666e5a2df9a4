#include "flownav/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flownav/errors.hpp"

namespace flownav::flow {

namespace {

constexpr int kBins = 256;

/// Nearest-rank percentile of a sorted sample.
double percentile(const std::vector<double>& sorted, double p) {
    auto idx = static_cast<std::size_t>(
        std::llround(p * static_cast<double>(sorted.size() - 1)));
    return sorted[idx];
}

Frame stretch(const Frame& frame) {
    std::vector<double> sorted = frame.g.data;
    std::sort(sorted.begin(), sorted.end());
    double lo = percentile(sorted, 0.01);
    double hi = percentile(sorted, 0.99);
    if (hi - lo < 1e-12) return frame;  // degenerate histogram
    Frame out = frame;
    double inv = 1.0 / (hi - lo);
    for (double& v : out.g.data) v = std::clamp((v - lo) * inv, 0.0, 1.0);
    return out;
}

Frame equalize(const Frame& frame) {
    std::size_t counts[kBins] = {0};
    auto bin_of = [](double v) {
        int b = static_cast<int>(v * kBins);
        return std::clamp(b, 0, kBins - 1);
    };
    for (double v : frame.g.data) ++counts[bin_of(v)];

    std::size_t cdf[kBins];
    std::size_t acc = 0;
    for (int b = 0; b < kBins; ++b) {
        acc += counts[b];
        cdf[b] = acc;
    }
    std::size_t cdf_min = 0;
    for (int b = 0; b < kBins; ++b) {
        if (counts[b] > 0) {
            cdf_min = cdf[b];
            break;
        }
    }
    const std::size_t n = frame.g.size();
    if (n <= cdf_min) return frame;  // single occupied bin: constant frame

    Frame out = frame;
    double denom = static_cast<double>(n - cdf_min);
    for (double& v : out.g.data)
        v = static_cast<double>(cdf[bin_of(v)] - cdf_min) / denom;
    return out;
}

}  // namespace

Frame to_grayscale(const render::ColorFrame& color) {
    Frame out;
    out.timestamp = color.timestamp;
    out.g = Grid(color.r.width, color.r.height);
    for (std::size_t i = 0; i < out.g.size(); ++i)
        out.g.data[i] = 0.299 * color.r.data[i] + 0.587 * color.g.data[i] +
                        0.114 * color.b.data[i];
    return out;
}

Frame enhance(const Frame& frame, EnhanceMode mode) {
    switch (mode) {
        case EnhanceMode::none: return frame;
        case EnhanceMode::stretch: return stretch(frame);
        case EnhanceMode::equalize: return equalize(frame);
        case EnhanceMode::both: return equalize(stretch(frame));
    }
    return frame;
}

const char* enhance_mode_name(EnhanceMode mode) {
    switch (mode) {
        case EnhanceMode::none: return "none";
        case EnhanceMode::stretch: return "stretch";
        case EnhanceMode::equalize: return "equalize";
        case EnhanceMode::both: return "both";
    }
    return "none";
}

EnhanceMode enhance_mode_from_name(const std::string& name) {
    if (name == "none") return EnhanceMode::none;
    if (name == "stretch") return EnhanceMode::stretch;
    if (name == "equalize") return EnhanceMode::equalize;
    if (name == "both") return EnhanceMode::both;
    throw ValidationError("unknown enhance mode '" + name + "'");
}

}  // namespace flownav::flow
