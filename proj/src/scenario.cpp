#include "flownav/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "flownav/errors.hpp"

namespace flownav {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + s + "'", line);
    }
}

long parse_int(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + s + "'", line);
    }
}

bool parse_bool(const std::string& s, int line) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ParseError("expected true/false, got '" + s + "'", line);
}

Vec2 parse_vec2(const std::string& s, int line) {
    auto tok = split_ws(s);
    if (tok.size() != 2) throw ParseError("expected two numbers, got '" + s + "'", line);
    return {parse_double(tok[0], line), parse_double(tok[1], line)};
}

world::Tint parse_tint(const std::string& s, int line) {
    if (s == "neutral") return {1.0, 1.0, 1.0};
    if (s == "warm") return {1.12, 0.98, 0.79};
    if (s == "cool") return {0.86, 1.04, 1.17};
    auto tok = split_ws(s);
    if (tok.size() != 3)
        throw ParseError("expected a tint name or three numbers, got '" + s + "'", line);
    return {parse_double(tok[0], line), parse_double(tok[1], line), parse_double(tok[2], line)};
}

// Raw per-entity capture before cross-references are resolved.
struct RawWall {
    world::WallSegment wall;
    std::string texture_name;
    bool tint_set = false;
    int line = 0;
};

struct ParseState {
    Scenario sc;
    std::vector<RawWall> walls;
    std::vector<world::Texture> textures;
    std::string floor_texture_name;
    std::optional<double> eye_height;
    int current_entity = -1;  // index into walls/textures/scripts for list sections
    std::string section;
};

void wall_key(ParseState& st, const std::string& key, const std::string& val, int line) {
    RawWall& rw = st.walls[st.current_entity];
    if (key == "p0")
        rw.wall.p0 = parse_vec2(val, line);
    else if (key == "p1")
        rw.wall.p1 = parse_vec2(val, line);
    else if (key == "texture")
        rw.texture_name = val;
    else if (key == "brightness")
        rw.wall.brightness = parse_double(val, line);
    else if (key == "tint") {
        rw.wall.tint = parse_tint(val, line);
        rw.tint_set = true;
    } else
        throw ParseError("unknown key '" + key + "' in [wall]", line);
}

void texture_key(ParseState& st, const std::string& key, const std::string& val, int line) {
    world::Texture& t = st.textures[st.current_entity];
    if (key == "name")
        t.name = val;
    else if (key == "kind")
        t.kind = world::texture_kind_from_name(val);
    else if (key == "period")
        t.period = parse_double(val, line);
    else if (key == "contrast")
        t.contrast = parse_double(val, line);
    else if (key == "seed")
        t.seed = static_cast<std::uint64_t>(parse_int(val, line));
    else
        throw ParseError("unknown key '" + key + "' in [texture]", line);
}

void script_key(ParseState& st, const std::string& key, const std::string& val, int line) {
    world::DynamicScript& s = st.sc.scene.scripts[st.current_entity];
    if (key == "wall")
        s.wall_index = static_cast<int>(parse_int(val, line));
    else if (key == "speed")
        s.speed = parse_double(val, line);
    else if (key == "loop")
        s.loop = parse_bool(val, line);
    else if (key == "waypoint")
        s.waypoints.push_back(parse_vec2(val, line));
    else
        throw ParseError("unknown key '" + key + "' in [script]", line);
}

void robot_key(ParseState& st, const std::string& key, const std::string& val, int line) {
    Scenario& sc = st.sc;
    if (key == "start")
        sc.start.position = parse_vec2(val, line);
    else if (key == "heading")
        sc.start.heading = parse_double(val, line);
    else if (key == "v_min")
        sc.constraints.v_min = parse_double(val, line);
    else if (key == "v_max")
        sc.constraints.v_max = parse_double(val, line);
    else if (key == "v_side_max")
        sc.constraints.v_side_max = parse_double(val, line);
    else if (key == "heading_slew_max")
        sc.constraints.heading_slew_max = parse_double(val, line);
    else if (key == "body_radius")
        sc.constraints.body_radius = parse_double(val, line);
    else if (key == "mode")
        sc.mode = robot::locomotion_mode_from_name(val);
    else if (key == "hfov_deg")
        sc.camera.hfov = parse_double(val, line) * 3.14159265358979323846 / 180.0;
    else if (key == "eye_height")
        st.eye_height = parse_double(val, line);
    else if (key == "width")
        sc.camera.width = static_cast<int>(parse_int(val, line));
    else if (key == "height")
        sc.camera.height = static_cast<int>(parse_int(val, line));
    else
        throw ParseError("unknown key '" + key + "' in [robot]", line);
}

void controller_key(ParseState& st, const std::string& key, const std::string& val, int line) {
    fuzzy::ControllerConfig& c = st.sc.controller;
    if (key == "model")
        c.id = fuzzy::model_from_name(val);
    else if (key == "rules")
        c.variant = fuzzy::rule_variant_from_name(val);
    else if (key == "w_angle")
        c.w_angle = parse_double(val, line);
    else if (key == "w_speed")
        c.w_speed = parse_double(val, line);
    else if (key == "cruise_speed")
        c.cruise_speed = parse_double(val, line);
    else if (key == "scale_factor")
        c.scale_factor = parse_double(val, line);
    else if (key == "set") {
        auto tok = split_ws(val);
        if (tok.size() != 4)
            throw ParseError("set override needs '<name> <smf|zmf> <a> <b>', got '" + val + "'",
                             line);
        fuzzy::SetOverride ov;
        auto dotpos = tok[0].find('.');
        if (dotpos != std::string::npos) {
            ov.variable = tok[0].substr(0, dotpos);
            ov.set = tok[0].substr(dotpos + 1);
        } else {
            ov.set = tok[0];
        }
        if (tok[1] == "smf")
            ov.kind = fuzzy::MfKind::smf;
        else if (tok[1] == "zmf")
            ov.kind = fuzzy::MfKind::zmf;
        else
            throw ParseError("set override kind must be smf or zmf, got '" + tok[1] + "'", line);
        ov.a = parse_double(tok[2], line);
        ov.b = parse_double(tok[3], line);
        c.overrides.push_back(ov);
    } else
        throw ParseError("unknown key '" + key + "' in [controller]", line);
}

void sim_key(ParseState& st, const std::string& key, const std::string& val, int line) {
    Scenario& sc = st.sc;
    if (key == "dt")
        sc.config.dt = parse_double(val, line);
    else if (key == "steps")
        sc.config.steps = static_cast<int>(parse_int(val, line));
    else if (key == "flow")
        sc.config.flow_params.algorithm = flow::algorithm_from_name(val);
    else if (key == "alpha")
        sc.config.flow_params.alpha = parse_double(val, line);
    else if (key == "iterations")
        sc.config.flow_params.iterations = static_cast<int>(parse_int(val, line));
    else if (key == "window")
        sc.config.flow_params.window = static_cast<int>(parse_int(val, line));
    else if (key == "eig_threshold")
        sc.config.flow_params.eig_threshold = parse_double(val, line);
    else if (key == "enhance")
        sc.config.enhance = flow::enhance_mode_from_name(val);
    else if (key == "seed")
        sc.config.seed = static_cast<std::uint64_t>(parse_int(val, line));
    else if (key == "command_delay")
        sc.config.command_delay = static_cast<int>(parse_int(val, line));
    else if (key == "wall_height")
        sc.scene.wall_height = parse_double(val, line);
    else if (key == "ambient")
        sc.scene.ambient_level = parse_double(val, line);
    else if (key == "floor_texture")
        st.floor_texture_name = val;
    else if (key == "axis") {
        auto tok = split_ws(val);
        if (tok.size() != 4)
            throw ParseError("axis needs 'x0 y0 x1 y1', got '" + val + "'", line);
        sc.axis = Axis{{parse_double(tok[0], line), parse_double(tok[1], line)},
                       {parse_double(tok[2], line), parse_double(tok[3], line)}};
    } else if (key == "segment") {
        auto tok = split_ws(val);
        if (tok.size() != 3)
            throw ParseError("segment needs '<name> <start> <end>', got '" + val + "'", line);
        sc.segments.push_back(
            SegmentSpan{tok[0], parse_double(tok[1], line), parse_double(tok[2], line)});
    } else if (key == "opening_side") {
        if (val == "left")
            sc.opening_side = Side::left;
        else if (val == "right")
            sc.opening_side = Side::right;
        else
            throw ParseError("opening_side must be left or right, got '" + val + "'", line);
    } else
        throw ParseError("unknown key '" + key + "' in [sim]", line);
}

const world::Tint kPalette[3] = {{1.0, 1.0, 1.0}, {1.12, 0.98, 0.79}, {0.86, 1.04, 1.17}};

void resolve_and_validate(ParseState& st, const std::string& name) {
    Scenario& sc = st.sc;
    sc.name = name;
    sc.scene.textures = st.textures;

    std::map<std::string, int> texture_ids;
    for (std::size_t i = 0; i < st.textures.size(); ++i) {
        const world::Texture& t = st.textures[i];
        if (t.name.empty())
            throw ValidationError("texture " + std::to_string(i) + ": missing name");
        if (!texture_ids.emplace(t.name, static_cast<int>(i)).second)
            throw ValidationError("texture '" + t.name + "' declared twice");
    }

    for (std::size_t i = 0; i < st.walls.size(); ++i) {
        RawWall& rw = st.walls[i];
        if (rw.texture_name.empty())
            throw ValidationError("wall " + std::to_string(i) + ": missing texture");
        auto it = texture_ids.find(rw.texture_name);
        if (it == texture_ids.end())
            throw ValidationError("wall " + std::to_string(i) + ": unknown texture '" +
                                  rw.texture_name + "'");
        rw.wall.texture_id = it->second;
        if (!rw.tint_set) rw.wall.tint = kPalette[i % 3];
        sc.scene.walls.push_back(rw.wall);
    }

    if (!st.floor_texture_name.empty()) {
        auto it = texture_ids.find(st.floor_texture_name);
        if (it == texture_ids.end())
            throw ValidationError("floor: unknown texture '" + st.floor_texture_name + "'");
        sc.scene.floor_texture_id = it->second;
    } else {
        // Textured floor by default so forward motion always produces flow.
        world::Texture floor;
        floor.name = "floor_default";
        floor.kind = world::TextureKind::checker;
        floor.period = 1.0;
        floor.contrast = 0.6;
        sc.scene.textures.push_back(floor);
        sc.scene.floor_texture_id = static_cast<int>(sc.scene.textures.size()) - 1;
    }

    if (!st.eye_height)
        sc.camera.eye_height = 0.5 * sc.scene.wall_height;
    else
        sc.camera.eye_height = *st.eye_height;

    world::validate(sc.scene);

    const robot::Constraints& c = sc.constraints;
    if (!(c.v_min >= 0.0 && c.v_min < c.v_max))
        throw ValidationError("robot: need 0 <= v_min < v_max");
    if (!(c.v_side_max > 0.0)) throw ValidationError("robot: v_side_max must be > 0");
    if (!(c.body_radius > 0.0)) throw ValidationError("robot: body_radius must be > 0");
    if (c.heading_slew_max < 0.0)
        throw ValidationError("robot: heading_slew_max must be >= 0");
    if (sc.camera.width <= 0 || sc.camera.height <= 0)
        throw ValidationError("robot: camera resolution must be positive");
    if (!(sc.camera.hfov > 0.0 && sc.camera.hfov < 3.14159265358979323846))
        throw ValidationError("robot: hfov must be inside (0, 180) degrees");
    if (!(sc.camera.eye_height > 0.0)) throw ValidationError("robot: eye_height must be > 0");

    if (!(sc.controller.scale_factor > 0.0))
        throw ValidationError("controller: scale_factor must be > 0");
    if (!(sc.controller.cruise_speed > 0.0))
        throw ValidationError("controller: cruise_speed must be > 0");
    fuzzy::build_controller(sc.controller);  // surfaces bad set overrides now

    if (!(sc.config.dt > 0.0)) throw ValidationError("sim: dt must be > 0");
    if (sc.config.steps < 1) throw ValidationError("sim: steps must be >= 1");
    if (sc.config.command_delay < 0)
        throw ValidationError("sim: command_delay must be >= 0");
    const flow::FlowParams& fp = sc.config.flow_params;
    if (!(fp.alpha > 0.0)) throw ValidationError("sim: alpha must be > 0");
    if (fp.iterations < 1) throw ValidationError("sim: iterations must be >= 1");
    if (fp.window < 3 || fp.window % 2 == 0)
        throw ValidationError("sim: window must be odd and >= 3");
    if (fp.eig_threshold < 0.0) throw ValidationError("sim: eig_threshold must be >= 0");
    for (const SegmentSpan& seg : sc.segments)
        if (!(seg.end > seg.start))
            throw ValidationError("sim: segment '" + seg.name + "' has end <= start");
    if (sc.axis && distance(sc.axis->p0, sc.axis->p1) <= 1e-9)
        throw ValidationError("sim: axis endpoints coincide");
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& name) {
    ParseState st;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", line_no);
            std::string section = line.substr(1, line.size() - 2);
            if (section == "wall") {
                st.walls.emplace_back();
                st.current_entity = static_cast<int>(st.walls.size()) - 1;
            } else if (section == "texture") {
                st.textures.emplace_back();
                st.current_entity = static_cast<int>(st.textures.size()) - 1;
            } else if (section == "script") {
                st.sc.scene.scripts.emplace_back();
                st.current_entity = static_cast<int>(st.sc.scene.scripts.size()) - 1;
            } else if (section != "robot" && section != "controller" && section != "sim") {
                throw ParseError("unknown section [" + section + "]", line_no);
            }
            st.section = section;
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value' or a [section] header", line_no);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        if (val.empty()) throw ParseError("empty value for key '" + key + "'", line_no);

        if (st.section == "wall")
            wall_key(st, key, val, line_no);
        else if (st.section == "texture")
            texture_key(st, key, val, line_no);
        else if (st.section == "script")
            script_key(st, key, val, line_no);
        else if (st.section == "robot")
            robot_key(st, key, val, line_no);
        else if (st.section == "controller")
            controller_key(st, key, val, line_no);
        else if (st.section == "sim")
            sim_key(st, key, val, line_no);
        else
            throw ParseError("key '" + key + "' outside any section", line_no);
    }

    resolve_and_validate(st, name);
    return st.sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    return parse_scenario(in, std::filesystem::path(path).stem().string());
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string serialize_scene(const world::WorldScene& scene) {
    std::ostringstream os;
    for (const world::Texture& t : scene.textures) {
        os << "[texture]\n";
        os << "name = " << t.name << "\n";
        os << "kind = " << world::texture_kind_name(t.kind) << "\n";
        os << "period = " << num(t.period) << "\n";
        os << "contrast = " << num(t.contrast) << "\n";
        os << "seed = " << t.seed << "\n\n";
    }
    for (const world::WallSegment& w : scene.walls) {
        os << "[wall]\n";
        os << "p0 = " << num(w.p0.x) << " " << num(w.p0.y) << "\n";
        os << "p1 = " << num(w.p1.x) << " " << num(w.p1.y) << "\n";
        os << "texture = " << scene.textures[w.texture_id].name << "\n";
        os << "brightness = " << num(w.brightness) << "\n";
        os << "tint = " << num(w.tint.r) << " " << num(w.tint.g) << " " << num(w.tint.b)
           << "\n\n";
    }
    for (const world::DynamicScript& s : scene.scripts) {
        os << "[script]\n";
        os << "wall = " << s.wall_index << "\n";
        os << "speed = " << num(s.speed) << "\n";
        os << "loop = " << (s.loop ? "true" : "false") << "\n";
        for (const Vec2& w : s.waypoints)
            os << "waypoint = " << num(w.x) << " " << num(w.y) << "\n";
        os << "\n";
    }
    os << "[sim]\n";
    os << "wall_height = " << num(scene.wall_height) << "\n";
    os << "ambient = " << num(scene.ambient_level) << "\n";
    if (scene.floor_texture_id >= 0)
        os << "floor_texture = " << scene.textures[scene.floor_texture_id].name << "\n";
    return os.str();
}

bool scene_equal(const world::WorldScene& a, const world::WorldScene& b) {
    if (a.walls.size() != b.walls.size() || a.scripts.size() != b.scripts.size() ||
        a.textures.size() != b.textures.size())
        return false;
    if (a.floor_texture_id != b.floor_texture_id || a.ambient_level != b.ambient_level ||
        a.wall_height != b.wall_height)
        return false;
    for (std::size_t i = 0; i < a.walls.size(); ++i) {
        const auto& wa = a.walls[i];
        const auto& wb = b.walls[i];
        if (!(wa.p0 == wb.p0 && wa.p1 == wb.p1 && wa.texture_id == wb.texture_id &&
              wa.brightness == wb.brightness && wa.tint.r == wb.tint.r &&
              wa.tint.g == wb.tint.g && wa.tint.b == wb.tint.b))
            return false;
    }
    for (std::size_t i = 0; i < a.scripts.size(); ++i) {
        const auto& sa = a.scripts[i];
        const auto& sb = b.scripts[i];
        if (!(sa.wall_index == sb.wall_index && sa.speed == sb.speed && sa.loop == sb.loop &&
              sa.waypoints.size() == sb.waypoints.size()))
            return false;
        for (std::size_t j = 0; j < sa.waypoints.size(); ++j)
            if (!(sa.waypoints[j] == sb.waypoints[j])) return false;
    }
    for (std::size_t i = 0; i < a.textures.size(); ++i) {
        const auto& ta = a.textures[i];
        const auto& tb = b.textures[i];
        if (!(ta.name == tb.name && ta.kind == tb.kind && ta.period == tb.period &&
              ta.contrast == tb.contrast && ta.seed == tb.seed))
            return false;
    }
    return true;
}

}  // namespace flownav
