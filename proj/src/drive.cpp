#include "ballbot/drive.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballbot {

void StepperDriver::step() {
    if (direction_ == StepDirection::Forward) {
        phase_ = (phase_ + 1) % 4;
    } else {
        phase_ = (phase_ + 3) % 4;
    }
}

Coils StepperDriver::coils() const {
    switch (phase_) {
        case 0: return {true, true, false, false};
        case 1: return {false, true, true, false};
        case 2: return {false, false, true, true};
        default: return {true, false, false, true};
    }
}

void DriveParams::validate() const {
    if (!(step_rate > 0.0)) throw std::invalid_argument("drive: step_rate must be > 0");
    if (steps_per_rev < 1) throw std::invalid_argument("drive: steps_per_rev must be >= 1");
    if (!(wheel_radius > 0.0)) throw std::invalid_argument("drive: wheel_radius must be > 0");
    if (!(wheel_base > 0.0)) throw std::invalid_argument("drive: wheel_base must be > 0");
    if (!(tick > 0.0)) throw std::invalid_argument("drive: tick must be > 0");
}

double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    if (a > std::numbers::pi) {
        a -= 2.0 * std::numbers::pi;
    } else if (a <= -std::numbers::pi) {
        a += 2.0 * std::numbers::pi;
    }
    return a;
}

WheelRates command_to_wheels(Command c, const DriveParams& p) {
    p.validate();
    const double f = p.step_rate;
    switch (c) {
        case Command::Forward: return {+f, +f};
        case Command::Backward: return {-f, -f};
        case Command::Stop: return {0.0, 0.0};
        case Command::Left: return {-f, +f};
        case Command::Right: return {+f, -f};
        case Command::Search: return {-f / 2.0, +f / 2.0};
    }
    throw std::invalid_argument("drive: unknown command");
}

RobotPose update_pose(const RobotPose& pose, long long left_steps, long long right_steps,
                      const DriveParams& p) {
    p.validate();
    const double circumference = 2.0 * std::numbers::pi * p.wheel_radius;
    const double s_left = circumference * (static_cast<double>(left_steps) / p.steps_per_rev);
    const double s_right = circumference * (static_cast<double>(right_steps) / p.steps_per_rev);
    const double v = (s_left + s_right) / 2.0;
    const double w = (s_right - s_left) / p.wheel_base;

    RobotPose out = pose;
    if (w == 0.0) {
        out.x += v * std::cos(pose.theta);
        out.y += v * std::sin(pose.theta);
    } else {
        const double r = v / w;
        out.x += r * (std::sin(pose.theta + w) - std::sin(pose.theta));
        out.y += r * (-std::cos(pose.theta + w) + std::cos(pose.theta));
        out.theta = normalize_angle(pose.theta + w);
    }
    return out;
}

long long StepAccumulator::advance(double rate, double dt) {
    pending_ += rate * dt;
    const long long whole = static_cast<long long>(std::trunc(pending_));
    pending_ -= static_cast<double>(whole);
    return whole;
}

}  // namespace ballbot
