#pragma once

#include <vector>

#include "flownav/flow.hpp"

namespace flownav::aggregate {

/// Per-region multisets of flow-vector magnitudes.
struct RegionMagnitudes {
    std::vector<double> left, middle, right;
};

/// The three region signals on the fuzzy universe of discourse. Raw values
/// are px/frame; scaled values are clamped into [0,10] (l_minus_r into
/// [-10,10]). The middle region is logged but consumed by no rule set.
struct RegionFlow {
    double raw_l = 0.0, raw_m = 0.0, raw_r = 0.0;
    double l = 0.0, m = 0.0, r = 0.0;
    double l_minus_r = 0.0;
    double l_plus_r = 0.0;
};

/// Columns [0, W/3) -> left, [W/3, 2W/3) -> middle, [2W/3, W) -> right
/// (floor division). Each pixel contributes sqrt(u^2 + v^2).
RegionMagnitudes segment(const flow::FlowField& field);

/// Sort, drop exactly the 3 largest and 3 smallest, mean the rest. Throws
/// ValidationError for fewer than 7 values (a mis-sized region).
double trimmed_mean(std::vector<double> magnitudes);

/// clamp(raw * factor, 0, 10).
double scale_value(double raw, double scale_factor);

/// Full pipeline: segment, trim, scale. l_minus_r = clamp(factor * (raw_l -
/// raw_r), -10, 10); l_plus_r = clamp(factor * (raw_l + raw_r) / 2, 0, 10)
/// so it shares the [0,10] universe.
RegionFlow region_flow(const flow::FlowField& field, double scale_factor);

}  // namespace flownav::aggregate
