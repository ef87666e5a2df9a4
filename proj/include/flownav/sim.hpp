#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flownav/aggregate.hpp"
#include "flownav/scenario.hpp"

namespace flownav::sim {

/// One row of the trajectory log. All floating-point fields are snapped to
/// their 9-significant-digit decimal representation when recorded, so the
/// CSV is a lossless image of the log and metrics recomputed from the file
/// match the in-process values exactly.
struct StepRecord {
    int step = 0;
    double t = 0.0;
    double x = 0.0, y = 0.0, heading = 0.0;  // pose the frame was rendered from
    double raw_l = 0.0, raw_m = 0.0, raw_r = 0.0;
    double l = 0.0, m = 0.0, r = 0.0;
    double l_minus_r = 0.0, l_plus_r = 0.0;
    double angle_out = 0.0, speed_out = 0.0;      // crisp fuzzy outputs
    double lat_cmd = 0.0, fwd_cmd = 0.0;          // de-normalized command computed this step
    double lat_applied = 0.0, fwd_applied = 0.0;  // post-delay, post-clamp actuation
    bool lat_clamped = false, fwd_clamped = false;
    bool zero_act_angle = false, zero_act_speed = false;
    bool neutral = false;     // bootstrap/delayed neutral command applied
    int collision_wall = -1;  // -1: no contact after this step
    double penetration = 0.0;
};

struct TrajectoryLog {
    std::vector<StepRecord> records;
};

struct SegmentSpeed {
    std::string name;
    double mean_speed = 0.0;
    int samples = 0;
};

struct MetricsReport {
    bool has_axis = false;
    double deviation_mean = 0.0;  // mean |offset| from the axis, post-transient
    double deviation_max = 0.0;   // max |offset|, post-transient
    double transient_fraction = 0.2;
    std::vector<SegmentSpeed> segment_speeds;
    bool has_opening = false;
    double max_excursion_toward_opening = 0.0;  // >= 0, all steps
    int collision_count = 0;
    double path_length = 0.0;
    double final_axis_progress = 0.0;  // arc length of the last pose on the axis
};

/// Test and dump hooks into the closed loop. frame_tap may modify the
/// preprocessed frame (causality tests); the sinks observe render / flow
/// products for file dumps.
struct SimHooks {
    std::function<void(int step, flow::Frame& processed)> frame_tap;
    std::function<void(int step, const render::ColorFrame& color, const flow::Frame& processed)>
        frame_sink;
    std::function<void(int step, const flow::FlowField& field)> flow_sink;
};

/// Run the closed loop for scenario.config.steps iterations:
/// render -> grayscale -> enhance -> flow -> segment/trim/scale -> infer ->
/// denormalize -> apply -> step_world. Step 0 has no previous frame and
/// applies a flagged neutral command. Collisions are recorded, not fatal.
/// Deterministic: identical scenarios produce identical logs.
TrajectoryLog run(const Scenario& scenario, const SimHooks& hooks = {});

/// Pure function of (log, scenario declarations). The transient fraction of
/// steps is excluded from the centring statistics.
MetricsReport metrics(const TrajectoryLog& log, const Scenario& scenario,
                      double transient_fraction = 0.2);

/// Drive straight along the declared axis at cruise speed for `frame_pairs`
/// flow measurements and return 5 / median(raw side-region magnitude), so
/// nominal corridor flow lands mid-universe. Throws CalibrationError when
/// the median is zero (featureless world) and ValidationError when the
/// scenario declares no axis.
double calibrate_scale(const Scenario& scenario, int frame_pairs = 12);

/// Trajectory CSV: fixed header, one record per step, floats printed with 9
/// significant digits.
void write_csv(const std::string& path, const TrajectoryLog& log);
TrajectoryLog read_csv(const std::string& path);
std::string csv_header();
std::string format_record(const StepRecord& rec);

/// Nearest double to the %.9g decimal rendering of x (the log's snapping).
double snap9(double x);

/// Metrics report as the CLI prints it.
std::string format_metrics(const MetricsReport& report);

}  // namespace flownav::sim
