#include "flownav/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flownav/errors.hpp"

namespace flownav::aggregate {

RegionMagnitudes segment(const flow::FlowField& field) {
    const int w = field.u.width;
    const int h = field.u.height;
    if (w < 3) throw ValidationError("segment: flow width must be >= 3");

    const int b1 = w / 3;
    const int b2 = 2 * w / 3;
    RegionMagnitudes out;
    out.left.reserve(static_cast<std::size_t>(b1) * h);
    out.middle.reserve(static_cast<std::size_t>(b2 - b1) * h);
    out.right.reserve(static_cast<std::size_t>(w - b2) * h);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double u = field.u.at(x, y);
            double v = field.v.at(x, y);
            double mag = std::sqrt(u * u + v * v);
            if (x < b1)
                out.left.push_back(mag);
            else if (x < b2)
                out.middle.push_back(mag);
            else
                out.right.push_back(mag);
        }
    }
    return out;
}

double trimmed_mean(std::vector<double> magnitudes) {
    if (magnitudes.size() < 7)
        throw ValidationError("trimmed_mean: region has fewer than 7 values (" +
                              std::to_string(magnitudes.size()) + ")");
    std::sort(magnitudes.begin(), magnitudes.end());
    double sum = std::accumulate(magnitudes.begin() + 3, magnitudes.end() - 3, 0.0);
    return sum / static_cast<double>(magnitudes.size() - 6);
}

double scale_value(double raw, double scale_factor) {
    return std::clamp(raw * scale_factor, 0.0, 10.0);
}

RegionFlow region_flow(const flow::FlowField& field, double scale_factor) {
    if (scale_factor <= 0.0) throw ValidationError("region_flow: scale factor must be > 0");
    RegionMagnitudes regions = segment(field);
    RegionFlow rf;
    rf.raw_l = trimmed_mean(std::move(regions.left));
    rf.raw_m = trimmed_mean(std::move(regions.middle));
    rf.raw_r = trimmed_mean(std::move(regions.right));
    rf.l = scale_value(rf.raw_l, scale_factor);
    rf.m = scale_value(rf.raw_m, scale_factor);
    rf.r = scale_value(rf.raw_r, scale_factor);
    rf.l_minus_r = std::clamp((rf.raw_l - rf.raw_r) * scale_factor, -10.0, 10.0);
    rf.l_plus_r = std::clamp(0.5 * (rf.raw_l + rf.raw_r) * scale_factor, 0.0, 10.0);
    return rf;
}

}  // namespace flownav::aggregate
