#include "flownav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "flownav/errors.hpp"

namespace flownav::sim {

namespace {

/// Apply the run seed to every texture (salt 0 is the identity).
world::WorldScene salted_scene(const world::WorldScene& scene, std::uint64_t salt) {
    world::WorldScene out = scene;
    for (world::Texture& t : out.textures) t.seed = world::mix_seed(t.seed, salt);
    return out;
}

std::map<std::string, double> controller_inputs(const fuzzy::ControllerModel& model,
                                                const aggregate::RegionFlow& rf) {
    switch (model.id) {
        case fuzzy::ModelId::center_flying:
            return {{"l_minus_r", rf.l_minus_r}};
        case fuzzy::ModelId::center_flying_speed:
            return {{"l_minus_r", rf.l_minus_r}, {"l_plus_r", rf.l_plus_r}};
        case fuzzy::ModelId::turn_at_threshold:
            return {{"l", rf.l}, {"r", rf.r}};
    }
    return {};
}

}  // namespace

double snap9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return std::strtod(buf, nullptr);
}

TrajectoryLog run(const Scenario& scenario, const SimHooks& hooks) {
    world::validate(scenario.scene);
    world::WorldScene scene = salted_scene(scenario.scene, scenario.config.seed);
    const SimConfig& cfg = scenario.config;
    fuzzy::ControllerModel model = fuzzy::build_controller(scenario.controller);
    const fuzzy::Command neutral_cmd{0.0, model.cruise_speed};

    robot::RobotState state = scenario.start;
    std::optional<flow::Frame> prev;
    std::vector<fuzzy::Command> computed;  // per-step commands, for the actuation delay
    computed.reserve(cfg.steps);

    TrajectoryLog log;
    log.records.reserve(cfg.steps);

    for (int k = 0; k < cfg.steps; ++k) {
        const double t = k * cfg.dt;
        render::ColorFrame color =
            render::render_frame(scene, {state.position, state.heading}, scenario.camera, t);
        flow::Frame processed = flow::enhance(flow::to_grayscale(color), cfg.enhance);
        if (hooks.frame_tap) hooks.frame_tap(k, processed);
        if (hooks.frame_sink) hooks.frame_sink(k, color, processed);

        StepRecord rec;
        rec.step = k;
        rec.t = snap9(t);
        rec.x = snap9(state.position.x);
        rec.y = snap9(state.position.y);
        rec.heading = snap9(state.heading);

        aggregate::RegionFlow rf;
        fuzzy::CrispOutputs crisp;
        fuzzy::Command cmd = neutral_cmd;
        bool computed_this_step = false;
        if (prev) {
            flow::FlowField field = flow::compute_flow(*prev, processed, cfg.flow_params);
            if (hooks.flow_sink) hooks.flow_sink(k, field);
            rf = aggregate::region_flow(field, scenario.controller.scale_factor);
            crisp = fuzzy::infer(model, controller_inputs(model, rf));
            cmd = fuzzy::denormalize(crisp, model);
            computed_this_step = true;
        }
        computed.push_back(cmd);

        // Actuation delay: the command applied at step k was computed at
        // step k - command_delay; the gap is padded with neutral commands.
        // Step 0's own command is the bootstrap neutral.
        fuzzy::Command applied_cmd = neutral_cmd;
        bool neutral = true;
        int src = k - cfg.command_delay;
        if (src > 0) {
            applied_cmd = computed[src];
            neutral = false;
        }

        robot::ApplyResult applied =
            robot::apply_command(state, applied_cmd, scenario.constraints, scenario.mode, cfg.dt);
        state = applied.state;
        scene = world::step_world(scene, t, cfg.dt);
        auto contact = robot::check_collision(scene, state, scenario.constraints);

        rec.raw_l = snap9(rf.raw_l);
        rec.raw_m = snap9(rf.raw_m);
        rec.raw_r = snap9(rf.raw_r);
        rec.l = snap9(rf.l);
        rec.m = snap9(rf.m);
        rec.r = snap9(rf.r);
        rec.l_minus_r = snap9(rf.l_minus_r);
        rec.l_plus_r = snap9(rf.l_plus_r);
        rec.angle_out = snap9(crisp.angle);
        rec.speed_out = snap9(crisp.speed);
        rec.lat_cmd = snap9(cmd.lateral_velocity);
        rec.fwd_cmd = snap9(cmd.forward_speed);
        rec.lat_applied = snap9(state.lateral_velocity);
        rec.fwd_applied = snap9(state.forward_speed);
        rec.lat_clamped = applied.lateral_clamped;
        rec.fwd_clamped = applied.forward_clamped;
        rec.zero_act_angle = crisp.zero_activation_angle && computed_this_step;
        rec.zero_act_speed = crisp.zero_activation_speed && computed_this_step;
        rec.neutral = neutral;
        rec.collision_wall = contact ? contact->wall_index : -1;
        rec.penetration = snap9(contact ? contact->penetration : 0.0);
        log.records.push_back(rec);

        prev = std::move(processed);
    }
    return log;
}

double calibrate_scale(const Scenario& scenario, int frame_pairs) {
    if (!scenario.axis)
        throw ValidationError("calibration requires a declared axis in [sim]");
    if (frame_pairs < 10)
        throw ValidationError("calibration needs at least 10 frame pairs");

    world::WorldScene scene = salted_scene(scenario.scene, scenario.config.seed);
    const double dt = scenario.config.dt;
    const double cruise = scenario.controller.cruise_speed;
    const Vec2 dir = normalized(scenario.axis->p1 - scenario.axis->p0);
    const double heading = std::atan2(dir.y, dir.x);

    robot::RobotState state = scenario.start;
    state.heading = heading;

    std::vector<double> side_mags;
    std::optional<flow::Frame> prev;
    for (int k = 0; k <= frame_pairs; ++k) {
        double t = k * dt;
        render::ColorFrame color =
            render::render_frame(scene, {state.position, state.heading}, scenario.camera, t);
        flow::Frame processed =
            flow::enhance(flow::to_grayscale(color), scenario.config.enhance);
        if (prev) {
            flow::FlowField field =
                flow::compute_flow(*prev, processed, scenario.config.flow_params);
            aggregate::RegionMagnitudes regions = aggregate::segment(field);
            side_mags.push_back(aggregate::trimmed_mean(std::move(regions.left)));
            side_mags.push_back(aggregate::trimmed_mean(std::move(regions.right)));
        }
        prev = std::move(processed);
        state.position = state.position + (cruise * dt) * dir;
        scene = world::step_world(scene, t, dt);
    }

    std::sort(side_mags.begin(), side_mags.end());
    std::size_t n = side_mags.size();
    double median = n % 2 == 1 ? side_mags[n / 2]
                               : 0.5 * (side_mags[n / 2 - 1] + side_mags[n / 2]);
    if (median < 1e-12)
        throw CalibrationError(
            "calibration failed: zero optical flow along the reference corridor "
            "(uniform or dark surfaces leave no trackable features)");
    return 5.0 / median;
}

MetricsReport metrics(const TrajectoryLog& log, const Scenario& scenario,
                      double transient_fraction) {
    if (log.records.empty()) throw ValidationError("metrics: empty trajectory log");
    MetricsReport rep;
    rep.transient_fraction = transient_fraction;

    const auto& recs = log.records;
    std::size_t first_steady =
        static_cast<std::size_t>(transient_fraction * static_cast<double>(recs.size()));
    if (first_steady >= recs.size()) first_steady = recs.size() - 1;

    for (std::size_t i = 1; i < recs.size(); ++i)
        rep.path_length += std::hypot(recs[i].x - recs[i - 1].x, recs[i].y - recs[i - 1].y);

    for (const StepRecord& r : recs)
        if (r.collision_wall >= 0) ++rep.collision_count;

    if (scenario.axis) {
        rep.has_axis = true;
        const Vec2 origin = scenario.axis->p0;
        const Vec2 dir = normalized(scenario.axis->p1 - scenario.axis->p0);
        const Vec2 left = perp(dir);  // +offset is to the left of the axis

        double sum_abs = 0.0;
        double max_abs = 0.0;
        for (std::size_t i = first_steady; i < recs.size(); ++i) {
            Vec2 p{recs[i].x, recs[i].y};
            double off = dot(p - origin, left);
            sum_abs += std::abs(off);
            max_abs = std::max(max_abs, std::abs(off));
        }
        rep.deviation_mean = sum_abs / static_cast<double>(recs.size() - first_steady);
        rep.deviation_max = max_abs;

        for (const SegmentSpan& seg : scenario.segments) {
            SegmentSpeed ss;
            ss.name = seg.name;
            double sum = 0.0;
            for (const StepRecord& r : recs) {
                double s = dot(Vec2{r.x, r.y} - origin, dir);
                if (s >= seg.start && s < seg.end) {
                    sum += r.fwd_applied;
                    ++ss.samples;
                }
            }
            ss.mean_speed = ss.samples > 0 ? sum / ss.samples : 0.0;
            rep.segment_speeds.push_back(ss);
        }

        if (scenario.opening_side) {
            rep.has_opening = true;
            double toward = *scenario.opening_side == Side::left ? 1.0 : -1.0;
            double max_exc = 0.0;
            for (const StepRecord& r : recs) {
                double off = dot(Vec2{r.x, r.y} - origin, left);
                max_exc = std::max(max_exc, toward * off);
            }
            rep.max_excursion_toward_opening = max_exc;
        }

        Vec2 last{recs.back().x, recs.back().y};
        rep.final_axis_progress = dot(last - origin, dir);
    }
    return rep;
}

std::string csv_header() {
    return "step,t,x,y,heading,raw_l,raw_m,raw_r,l,m,r,l_minus_r,l_plus_r,angle_out,"
           "speed_out,lat_cmd,fwd_cmd,lat_applied,fwd_applied,lat_clamped,fwd_clamped,"
           "zero_act_angle,zero_act_speed,neutral,collision_wall,penetration";
}

std::string format_record(const StepRecord& r) {
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,"
                  "%.9g,%.9g,%.9g,%.9g,%d,%d,%d,%d,%d,%d,%.9g",
                  r.step, r.t, r.x, r.y, r.heading, r.raw_l, r.raw_m, r.raw_r, r.l, r.m, r.r,
                  r.l_minus_r, r.l_plus_r, r.angle_out, r.speed_out, r.lat_cmd, r.fwd_cmd,
                  r.lat_applied, r.fwd_applied, r.lat_clamped ? 1 : 0, r.fwd_clamped ? 1 : 0,
                  r.zero_act_angle ? 1 : 0, r.zero_act_speed ? 1 : 0, r.neutral ? 1 : 0,
                  r.collision_wall, r.penetration);
    return buf;
}

void write_csv(const std::string& path, const TrajectoryLog& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trajectory CSV '" + path + "'");
    out << csv_header() << "\n";
    for (const StepRecord& r : log.records) out << format_record(r) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

TrajectoryLog read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trajectory CSV '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty trajectory CSV", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header()) throw ParseError("unexpected trajectory CSV header", 1);

    TrajectoryLog log;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 26)
            throw ParseError("expected 26 CSV fields, got " + std::to_string(fields.size()),
                             line_no);
        auto d = [&](int i) { return std::strtod(fields[i].c_str(), nullptr); };
        auto b = [&](int i) { return fields[i] == "1"; };
        StepRecord r;
        r.step = static_cast<int>(std::strtol(fields[0].c_str(), nullptr, 10));
        r.t = d(1);
        r.x = d(2);
        r.y = d(3);
        r.heading = d(4);
        r.raw_l = d(5);
        r.raw_m = d(6);
        r.raw_r = d(7);
        r.l = d(8);
        r.m = d(9);
        r.r = d(10);
        r.l_minus_r = d(11);
        r.l_plus_r = d(12);
        r.angle_out = d(13);
        r.speed_out = d(14);
        r.lat_cmd = d(15);
        r.fwd_cmd = d(16);
        r.lat_applied = d(17);
        r.fwd_applied = d(18);
        r.lat_clamped = b(19);
        r.fwd_clamped = b(20);
        r.zero_act_angle = b(21);
        r.zero_act_speed = b(22);
        r.neutral = b(23);
        r.collision_wall = static_cast<int>(std::strtol(fields[24].c_str(), nullptr, 10));
        r.penetration = d(25);
        log.records.push_back(r);
    }
    return log;
}

std::string format_metrics(const MetricsReport& rep) {
    std::ostringstream os;
    char buf[128];
    auto line = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.9g\n", key, v);
        os << buf;
    };
    if (rep.has_axis) {
        line("deviation_mean", rep.deviation_mean);
        line("deviation_max", rep.deviation_max);
        line("final_axis_progress", rep.final_axis_progress);
    } else {
        os << "# no axis declared: centring metrics omitted\n";
    }
    for (const SegmentSpeed& s : rep.segment_speeds) {
        std::snprintf(buf, sizeof buf, "segment_speed.%s = %.9g (%d samples)\n",
                      s.name.c_str(), s.mean_speed, s.samples);
        os << buf;
    }
    if (rep.has_opening) line("max_excursion_toward_opening", rep.max_excursion_toward_opening);
    os << "collisions = " << rep.collision_count << "\n";
    line("path_length", rep.path_length);
    return os.str();
}

}  // namespace flownav::sim
