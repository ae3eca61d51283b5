#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ballbot/drive.hpp"
#include "ballbot/rng.hpp"
#include "oracles.hpp"

using namespace ballbot;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Heading change per wheel step pair when spinning in place: each step moves a
// wheel rim by (2*pi*r / steps_per_rev), and opposite wheel motion divides by
// half the wheel base twice, i.e. dtheta = 2 * step_arc / wheel_base.
double spin_step_theta(const DriveParams& p, long long steps) {
    const double arc = 2.0 * kPi * p.wheel_radius * static_cast<double>(steps) /
                       static_cast<double>(p.steps_per_rev);
    return 2.0 * arc / p.wheel_base;
}

double wrap_delta(double a, double b) {
    return normalize_angle(a - b);
}

}  // namespace

TEST_CASE("stepper cycles through the four coil patterns") {
    StepperDriver d;
    CHECK(d.phase_index() == 0);
    CHECK(d.coils() == Coils{true, true, false, false});

    d.set_direction(StepDirection::Forward);
    d.step();
    CHECK(d.coils() == Coils{false, true, true, false});
    d.step();
    CHECK(d.coils() == Coils{false, false, true, true});
    d.step();
    CHECK(d.coils() == Coils{true, false, false, true});
    d.step();
    CHECK(d.phase_index() == 0);
}

TEST_CASE("a reverse step undoes a forward step") {
    StepperDriver d;
    d.set_direction(StepDirection::Forward);
    d.step();
    d.set_direction(StepDirection::Reverse);
    d.step();
    CHECK(d.phase_index() == 0);

    d.step();
    CHECK(d.phase_index() == 3);
}

TEST_CASE("commands map to wheel step rates") {
    const DriveParams p;
    CHECK(command_to_wheels(Command::Forward, p) == WheelRates{400.0, 400.0});
    CHECK(command_to_wheels(Command::Backward, p) == WheelRates{-400.0, -400.0});
    CHECK(command_to_wheels(Command::Stop, p) == WheelRates{0.0, 0.0});
    CHECK(command_to_wheels(Command::Left, p) == WheelRates{-400.0, 400.0});
    CHECK(command_to_wheels(Command::Right, p) == WheelRates{400.0, -400.0});
    CHECK(command_to_wheels(Command::Search, p) == WheelRates{-200.0, 200.0});
}

TEST_CASE("pose update handles the degenerate and straight cases exactly") {
    const DriveParams p;
    const RobotPose start{0.25, -0.75, 0.5};

    SUBCASE("zero steps leave the pose bitwise unchanged") {
        CHECK(update_pose(start, 0, 0, p) == start);
    }

    SUBCASE("equal steps drive straight along the heading") {
        const RobotPose moved = update_pose(RobotPose{0.0, 0.0, 0.0}, 100, 100, p);
        const double dist = 2.0 * kPi * p.wheel_radius * 100.0 / 200.0;
        CHECK(moved.x == doctest::Approx(dist).epsilon(1e-12));
        CHECK(moved.y == 0.0);
        CHECK(moved.theta == 0.0);
    }

    SUBCASE("opposite steps spin in place") {
        const RobotPose spun = update_pose(start, -50, 50, p);
        CHECK(spun.x == start.x);
        CHECK(spun.y == start.y);
        CHECK(spun.theta ==
              doctest::Approx(start.theta + spin_step_theta(p, 50)).epsilon(1e-12));
    }
}

TEST_CASE("search rotation accumulates to two full turns in 625 ticks") {
    const DriveParams p;
    const WheelRates w = command_to_wheels(Command::Search, p);
    StepAccumulator left;
    StepAccumulator right;

    RobotPose pose{0.0, 0.0, 0.0};
    double unwrapped = 0.0;
    for (int i = 0; i < 625; ++i) {
        const long long dl = left.advance(w.left, p.tick);
        const long long dr = right.advance(w.right, p.tick);
        const RobotPose next = update_pose(pose, dl, dr, p);
        unwrapped += wrap_delta(next.theta, pose.theta);
        pose = next;
    }
    CHECK(unwrapped == doctest::Approx(4.0 * kPi).epsilon(1e-9));
    CHECK(pose.x == 0.0);
    CHECK(pose.y == 0.0);
}

TEST_CASE("straight motion preserves the heading bit for bit") {
    XorShift64Star rng(505);
    const DriveParams p;
    for (int i = 0; i < 200; ++i) {
        const double theta = (static_cast<double>(rng.next_below(20000)) / 10000.0 - 1.0) * kPi;
        const long long steps = static_cast<long long>(rng.next_below(800)) - 400;
        const RobotPose start{1.0, -2.0, theta};
        const RobotPose end = update_pose(start, steps, steps, p);
        CHECK(end.theta == theta);
        const double dist = std::hypot(end.x - start.x, end.y - start.y);
        const double expect =
            std::abs(2.0 * kPi * p.wheel_radius * static_cast<double>(steps) /
                     static_cast<double>(p.steps_per_rev));
        CHECK(dist == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("spin motion preserves the position bit for bit") {
    XorShift64Star rng(506);
    const DriveParams p;
    for (int i = 0; i < 200; ++i) {
        const long long steps = 1 + static_cast<long long>(rng.next_below(500));
        const RobotPose start{-0.125, 3.5, 0.75};
        const RobotPose end = update_pose(start, -steps, steps, p);
        CHECK(end.x == start.x);
        CHECK(end.y == start.y);
    }
}

TEST_CASE("arc motion is reversible to within rounding") {
    XorShift64Star rng(507);
    const DriveParams p;
    for (int i = 0; i < 500; ++i) {
        const long long dl = static_cast<long long>(rng.next_below(801)) - 400;
        const long long dr = static_cast<long long>(rng.next_below(801)) - 400;
        const RobotPose start{0.5, -0.25, 1.1};
        const RobotPose there = update_pose(start, dl, dr, p);
        const RobotPose back = update_pose(there, -dl, -dr, p);
        CHECK(back.x == doctest::Approx(start.x).epsilon(1e-12));
        CHECK(back.y == doctest::Approx(start.y).epsilon(1e-12));
        CHECK(std::abs(wrap_delta(back.theta, start.theta)) < 1e-12);
    }
}

TEST_CASE("closed-form pose update agrees with fine Euler integration") {
    XorShift64Star rng(508);
    const DriveParams p;
    for (int i = 0; i < 200; ++i) {
        const long long dl = static_cast<long long>(rng.next_below(9)) - 4;
        const long long dr = static_cast<long long>(rng.next_below(9)) - 4;
        const RobotPose start{
            static_cast<double>(rng.next_below(100)) / 50.0 - 1.0,
            static_cast<double>(rng.next_below(100)) / 50.0 - 1.0,
            (static_cast<double>(rng.next_below(20000)) / 10000.0 - 1.0) * kPi,
        };
        const RobotPose exact = update_pose(start, dl, dr, p);
        const RobotPose euler = oracle::euler_pose(start, dl, dr, p, 100000);
        CHECK(exact.x == doctest::Approx(euler.x).epsilon(1e-6));
        CHECK(exact.y == doctest::Approx(euler.y).epsilon(1e-6));
        CHECK(std::abs(wrap_delta(exact.theta, euler.theta)) < 1e-6);
    }
}

TEST_CASE("angle normalization lands in the half-open interval") {
    CHECK(normalize_angle(0.0) == 0.0);
    CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(2.0 * kPi) == doctest::Approx(0.0).epsilon(1e-12));
    XorShift64Star rng(509);
    for (int i = 0; i < 1000; ++i) {
        const double a = (static_cast<double>(rng.next_below(2000000)) / 1000.0) - 1000.0;
        const double n = normalize_angle(a);
        CHECK(n > -kPi - 1e-12);
        CHECK(n <= kPi + 1e-12);
        const double diff = std::remainder(a - n, 2.0 * kPi);
        CHECK(std::abs(diff) < 1e-9);
    }
}

TEST_CASE("step accumulator emits whole steps and keeps the remainder") {
    const double tick = 0.01;

    SUBCASE("an exact rate emits a constant stream") {
        StepAccumulator acc;
        for (int i = 0; i < 100; ++i) CHECK(acc.advance(400.0, tick) == 4);
    }

    SUBCASE("a fractional rate alternates and conserves the total") {
        StepAccumulator acc;
        long long total = 0;
        for (int i = 0; i < 100; ++i) {
            const long long n = acc.advance(150.0, tick);
            CHECK((n == 1 || n == 2));
            total += n;
        }
        CHECK(total == 150);
    }

    SUBCASE("negative rates mirror positive ones") {
        StepAccumulator pos;
        StepAccumulator neg;
        XorShift64Star rng(510);
        for (int i = 0; i < 500; ++i) {
            const double rate = static_cast<double>(rng.next_below(5000)) / 7.0;
            CHECK(neg.advance(-rate, tick) == -pos.advance(rate, tick));
        }
    }
}

TEST_CASE("drive params validation rejects non-positive values") {
    DriveParams p;
    CHECK_NOTHROW(p.validate());

    p = {};
    p.step_rate = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = {};
    p.steps_per_rev = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = {};
    p.wheel_radius = -0.04;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = {};
    p.wheel_base = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = {};
    p.tick = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
