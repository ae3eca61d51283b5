#pragma once

#include <cstdint>

#include "ballbot/controller.hpp"

namespace ballbot {

enum class StepDirection {
    Forward,
    Reverse,
};

// Energized coils of a two-phase full-step sequence. Exactly two are on at
// any phase: AB, BC, CD, DA for phases 0..3.
struct Coils {
    bool a, b, c, d;

    bool operator==(const Coils&) const = default;
};

// Two-phase full-step driver model. Only the phase cycle is modelled; no
// timing or current behavior.
class StepperDriver {
public:
    void set_direction(StepDirection d) { direction_ = d; }
    StepDirection direction() const { return direction_; }

    // Advances the phase one full step in the current direction.
    void step();

    int phase_index() const { return phase_; }
    Coils coils() const;

private:
    int phase_ = 0;
    StepDirection direction_ = StepDirection::Forward;
};

struct DriveParams {
    double step_rate = 400.0;  // full steps per second at tracking speed
    int steps_per_rev = 200;
    double wheel_radius = 0.04;  // m
    double wheel_base = 0.25;    // m
    double tick = 0.01;          // s

    void validate() const;
};

struct RobotPose {
    double x = 0.0;      // m
    double y = 0.0;      // m
    double theta = 0.0;  // rad, counterclockwise from +x, in (-pi, pi]

    bool operator==(const RobotPose&) const = default;
};

// Signed step rates (steps/s) for the two wheels.
struct WheelRates {
    double left = 0.0;
    double right = 0.0;

    bool operator==(const WheelRates&) const = default;
};

// Maps angle into (-pi, pi].
double normalize_angle(double a);

// Wheel-level meaning of each command, with f = step_rate:
//   F (+f,+f)  B (-f,-f)  S (0,0)  L (-f,+f)  R (+f,-f)  P (-f/2,+f/2)
// L/R/P are in-place spins; P runs at half rate so the search sweep is slow
// enough for the detector to lock on.
WheelRates command_to_wheels(Command c, const DriveParams& p);

// Exact differential-drive arc update for one batch of whole steps per
// wheel. Equal steps translate along the heading; unequal steps follow the
// circular arc about the instantaneous center of rotation.
RobotPose update_pose(const RobotPose& pose, long long left_steps, long long right_steps,
                      const DriveParams& p);

// Carries the fractional part of rate*dt between ticks so slow rates still
// emit the exact long-run step count. Whole steps are truncated toward
// zero, which keeps opposite-sign rates symmetric.
class StepAccumulator {
public:
    long long advance(double rate, double dt);
    double pending() const { return pending_; }

private:
    double pending_ = 0.0;
};

}  // namespace ballbot
