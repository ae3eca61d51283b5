#include "ballbot/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ballbot {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

double parse_double(const std::string& raw, const std::string& key, int line) {
    const std::string t = trim(raw);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ScenarioError(key + ": not a number: '" + t + "'", line);
    }
}

long long parse_int(const std::string& raw, const std::string& key, int line) {
    const std::string t = trim(raw);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ScenarioError(key + ": not an integer: '" + t + "'", line);
    }
    return v;
}

std::uint64_t parse_u64(const std::string& raw, const std::string& key, int line) {
    const std::string t = trim(raw);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ScenarioError(key + ": not a non-negative integer: '" + t + "'", line);
    }
    return v;
}

int parse_byte(const std::string& raw, const std::string& key, int line) {
    const long long v = parse_int(raw, key, line);
    if (v < 0 || v > 255) throw ScenarioError(key + ": out of range 0..255", line);
    return static_cast<int>(v);
}

}  // namespace

void CameraModel::validate() const {
    if (!(focal_px > 0.0)) throw std::invalid_argument("camera: focal_px must be > 0");
    if (!(cam_height > 0.0)) throw std::invalid_argument("camera: cam_height must be > 0");
    if (!(ball_radius_m > 0.0)) throw std::invalid_argument("camera: ball_radius_m must be > 0");
}

void Scenario::validate() const {
    if (background < 0 || background > 255) {
        throw std::invalid_argument("scenario: background must be in 0..255");
    }
    if (!(noise_density >= 0.0 && noise_density <= 0.05)) {
        throw std::invalid_argument("scenario: noise_density must be in [0, 0.05]");
    }
    if (!(lighting_scale > 0.0)) {
        throw std::invalid_argument("scenario: lighting_scale must be > 0");
    }
    if (max_ticks < 1) throw std::invalid_argument("scenario: max_ticks must be >= 1");
    for (std::size_t i = 1; i < ball_path.size(); ++i) {
        if (!(ball_path[i].t > ball_path[i - 1].t)) {
            throw std::invalid_argument("scenario: ball_path timestamps must strictly increase");
        }
    }
    pipeline.validate();
    controller.validate();
    drive.validate();
    camera.validate();
}

std::optional<std::pair<double, double>> Scenario::ball_position(double t) const {
    if (ball_path.empty()) return std::nullopt;
    if (t <= ball_path.front().t) return std::pair{ball_path.front().x, ball_path.front().y};
    if (t >= ball_path.back().t) return std::pair{ball_path.back().x, ball_path.back().y};
    for (std::size_t i = 1; i < ball_path.size(); ++i) {
        if (t <= ball_path[i].t) {
            const Waypoint& a = ball_path[i - 1];
            const Waypoint& b = ball_path[i];
            const double u = (t - a.t) / (b.t - a.t);
            return std::pair{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
        }
    }
    return std::pair{ball_path.back().x, ball_path.back().y};
}

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    // Most recent line that touched each parameter group, for error
    // reporting when cross-field validation fails after the parse.
    int line_pipeline = 0, line_controller = 0, line_drive = 0, line_camera = 0;
    int line_ball_path = 0;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text[0] == '#') continue;

        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError("expected 'key = value'", line);
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw ScenarioError("empty key", line);

        if (key == "robot_start") {
            const auto parts = split(value, ',');
            if (parts.size() != 3) throw ScenarioError("robot_start needs 'x,y,theta'", line);
            sc.robot_start.x = parse_double(parts[0], key, line);
            sc.robot_start.y = parse_double(parts[1], key, line);
            sc.robot_start.theta = parse_double(parts[2], key, line);
        } else if (key == "ball_path") {
            line_ball_path = line;
            sc.ball_path.clear();
            if (!value.empty()) {
                for (const std::string& triple : split(value, ';')) {
                    if (trim(triple).empty()) continue;
                    const auto parts = split(triple, ',');
                    if (parts.size() != 3) {
                        throw ScenarioError("ball_path waypoint needs 't,x,y'", line);
                    }
                    sc.ball_path.push_back({parse_double(parts[0], key, line),
                                            parse_double(parts[1], key, line),
                                            parse_double(parts[2], key, line)});
                }
            }
        } else if (key == "background") {
            sc.background = parse_byte(value, key, line);
        } else if (key == "ball_color") {
            const auto parts = split(value, ',');
            if (parts.size() != 3) throw ScenarioError("ball_color needs 'r,g,b'", line);
            sc.ball_color.r = static_cast<std::uint8_t>(parse_byte(parts[0], key, line));
            sc.ball_color.g = static_cast<std::uint8_t>(parse_byte(parts[1], key, line));
            sc.ball_color.b = static_cast<std::uint8_t>(parse_byte(parts[2], key, line));
        } else if (key == "noise_density") {
            sc.noise_density = parse_double(value, key, line);
            if (!(sc.noise_density >= 0.0 && sc.noise_density <= 0.05)) {
                throw ScenarioError("noise_density must be in [0, 0.05]", line);
            }
        } else if (key == "lighting_scale") {
            sc.lighting_scale = parse_double(value, key, line);
            if (!(sc.lighting_scale > 0.0)) {
                throw ScenarioError("lighting_scale must be > 0", line);
            }
        } else if (key == "seed") {
            sc.seed = parse_u64(value, key, line);
        } else if (key == "max_ticks") {
            const long long v = parse_int(value, key, line);
            if (v < 1) throw ScenarioError("max_ticks must be >= 1", line);
            sc.max_ticks = static_cast<int>(v);
        } else if (key == "expect") {
            if (value != "converge") {
                throw ScenarioError("expect: only 'converge' is recognized", line);
            }
            sc.expect_converge = true;
        } else if (key == "hyst_low") {
            sc.pipeline.hyst_low = static_cast<int>(parse_int(value, key, line));
            line_pipeline = line;
        } else if (key == "hyst_high") {
            sc.pipeline.hyst_high = static_cast<int>(parse_int(value, key, line));
            line_pipeline = line;
        } else if (key == "mean_kernel") {
            sc.pipeline.mean_kernel = static_cast<int>(parse_int(value, key, line));
            line_pipeline = line;
        } else if (key == "link_radius") {
            sc.pipeline.link_radius = static_cast<int>(parse_int(value, key, line));
            line_pipeline = line;
        } else if (key == "min_cluster") {
            sc.pipeline.min_cluster = static_cast<int>(parse_int(value, key, line));
            line_pipeline = line;
        } else if (key == "r_min") {
            sc.pipeline.r_min = parse_double(value, key, line);
            line_pipeline = line;
        } else if (key == "r_max") {
            sc.pipeline.r_max = parse_double(value, key, line);
            line_pipeline = line;
        } else if (key == "circ_thresh") {
            sc.pipeline.circ_thresh = parse_double(value, key, line);
            line_pipeline = line;
        } else if (key == "frame_center_x") {
            sc.controller.frame_center_x = static_cast<int>(parse_int(value, key, line));
            line_controller = line;
        } else if (key == "dead_zone") {
            sc.controller.dead_zone = static_cast<int>(parse_int(value, key, line));
            line_controller = line;
        } else if (key == "fwd_min") {
            sc.controller.fwd_min = static_cast<int>(parse_int(value, key, line));
            line_controller = line;
        } else if (key == "stop_lo") {
            sc.controller.stop_lo = static_cast<int>(parse_int(value, key, line));
            line_controller = line;
        } else if (key == "stop_hi") {
            sc.controller.stop_hi = static_cast<int>(parse_int(value, key, line));
            line_controller = line;
        } else if (key == "step_rate") {
            sc.drive.step_rate = parse_double(value, key, line);
            line_drive = line;
        } else if (key == "steps_per_rev") {
            sc.drive.steps_per_rev = static_cast<int>(parse_int(value, key, line));
            line_drive = line;
        } else if (key == "wheel_radius") {
            sc.drive.wheel_radius = parse_double(value, key, line);
            line_drive = line;
        } else if (key == "wheel_base") {
            sc.drive.wheel_base = parse_double(value, key, line);
            line_drive = line;
        } else if (key == "tick") {
            sc.drive.tick = parse_double(value, key, line);
            line_drive = line;
        } else if (key == "focal_px") {
            sc.camera.focal_px = parse_double(value, key, line);
            line_camera = line;
        } else if (key == "cam_height") {
            sc.camera.cam_height = parse_double(value, key, line);
            line_camera = line;
        } else if (key == "ball_radius_m") {
            sc.camera.ball_radius_m = parse_double(value, key, line);
            line_camera = line;
        } else {
            throw ScenarioError("unknown key '" + key + "'", line);
        }
    }

    for (std::size_t i = 1; i < sc.ball_path.size(); ++i) {
        if (!(sc.ball_path[i].t > sc.ball_path[i - 1].t)) {
            throw ScenarioError("ball_path timestamps must strictly increase", line_ball_path);
        }
    }
    try {
        sc.pipeline.validate();
    } catch (const std::exception& e) {
        throw ScenarioError(e.what(), line_pipeline);
    }
    try {
        sc.controller.validate();
    } catch (const std::exception& e) {
        throw ScenarioError(e.what(), line_controller);
    }
    try {
        sc.drive.validate();
    } catch (const std::exception& e) {
        throw ScenarioError(e.what(), line_drive);
    }
    try {
        sc.camera.validate();
    } catch (const std::exception& e) {
        throw ScenarioError(e.what(), line_camera);
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ScenarioError("cannot open scenario file: " + path, 0);
    return parse_scenario(f);
}

}  // namespace ballbot
