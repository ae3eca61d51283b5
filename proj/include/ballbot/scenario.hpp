#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballbot/controller.hpp"
#include "ballbot/drive.hpp"
#include "ballbot/image.hpp"
#include "ballbot/pipeline.hpp"

namespace ballbot {

// Pinhole camera looking along the robot heading. Frame size is fixed; the
// detector thresholds and the controller bands are calibrated to 640x480.
struct CameraModel {
    static constexpr int kFrameWidth = 640;
    static constexpr int kFrameHeight = 480;

    double focal_px = 600.0;
    double cam_height = 0.10;     // m above ground, also the ball center height
    double ball_radius_m = 0.033;

    void validate() const;
};

struct Waypoint {
    double t;  // s
    double x;  // m, world frame
    double y;  // m, world frame

    bool operator==(const Waypoint&) const = default;
};

// World description for one closed-loop run plus overrides for every
// tunable parameter group.
struct Scenario {
    RobotPose robot_start;
    std::vector<Waypoint> ball_path;  // empty = no ball in the world
    int background = 64;
    Pixel ball_color{0, 200, 0};
    double noise_density = 0.0;  // fraction of pixels, capped at 0.05
    double lighting_scale = 1.0;
    std::uint64_t seed = 1;
    int max_ticks = 1000;
    bool expect_converge = false;

    PipelineConfig pipeline;
    ControllerParams controller;
    DriveParams drive;
    CameraModel camera;

    void validate() const;

    // Ball position at time t: piecewise-linear between waypoints, held
    // constant before the first and after the last. nullopt when there is
    // no ball at all.
    std::optional<std::pair<double, double>> ball_position(double t) const;
};

struct ScenarioError : std::runtime_error {
    int line;  // 1-based line in the scenario text, 0 if not line-specific

    ScenarioError(const std::string& msg, int line_no)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg
                                         : msg),
          line(line_no) {}
};

// Parses `key = value` lines. Blank lines and lines starting with `#` are
// skipped; unknown keys and out-of-range values raise ScenarioError with
// the offending line number.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

}  // namespace ballbot
