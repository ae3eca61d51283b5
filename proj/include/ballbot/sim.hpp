#pragma once

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "ballbot/controller.hpp"
#include "ballbot/drive.hpp"
#include "ballbot/image.hpp"
#include "ballbot/mcu.hpp"
#include "ballbot/rng.hpp"
#include "ballbot/scenario.hpp"

namespace ballbot {

// One closed-loop iteration. The pose is the robot state after this tick's
// motion; t is the time the frame was sensed (tick * drive tick length).
// cx, cy and box are zero when nothing was detected.
struct TraceRow {
    int tick = 0;
    double t = 0.0;
    RobotPose pose;
    bool detected = false;
    double cx = 0.0;
    double cy = 0.0;
    int box = 0;
    Command command = Command::Search;
    long long left_steps = 0;
    long long right_steps = 0;
};

struct SimResult {
    std::vector<TraceRow> trace;
    McuEmulator mcu;
    StepperDriver left_driver;
    StepperDriver right_driver;
    RobotPose final_pose;
    bool issued_stop = false;  // true if any tick decided Stop
};

// Receives each rendered frame before detection runs on it.
class FrameSink {
public:
    virtual ~FrameSink() = default;
    virtual void on_frame(int tick, const RgbImage& frame) = 0;
};

// Draws the world as seen from the robot pose: flat background, the ball as
// a filled disk through the pinhole model when it lies in front of the
// camera, then impulse noise from the generator. The generator advances
// only for the noise pixels, so zero noise_density never consumes draws.
RgbImage render_frame(const Scenario& sc, std::optional<std::pair<double, double>> ball_pos,
                      const RobotPose& pose, XorShift64Star& rng);

// Runs sense -> decide -> transmit -> actuate for max_ticks. The MCU is
// initialized once before the first tick.
SimResult run_closed_loop(const Scenario& sc, FrameSink* sink = nullptr);

// CSV trace: a generator comment line, the column header, one row per tick,
// and a trailing comment summarizing the MCU event log. Floats use 6
// decimals.
void write_trace(std::ostream& out, const SimResult& result, const Scenario& sc);

}  // namespace ballbot
