#include "ballbot/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ballbot/pipeline.hpp"
#include "ballbot/protocol.hpp"

namespace ballbot {

namespace {

std::uint8_t scale_channel(int value, double scale) {
    const long long v = std::llround(value * scale);
    return static_cast<std::uint8_t>(std::clamp<long long>(v, 0, 255));
}

void advance_driver(StepperDriver& d, long long steps) {
    d.set_direction(steps >= 0 ? StepDirection::Forward : StepDirection::Reverse);
    for (long long i = 0; i < std::llabs(steps); ++i) d.step();
}

}  // namespace

RgbImage render_frame(const Scenario& sc, std::optional<std::pair<double, double>> ball_pos,
                      const RobotPose& pose, XorShift64Star& rng) {
    const int w = CameraModel::kFrameWidth;
    const int h = CameraModel::kFrameHeight;
    const std::uint8_t bg = scale_channel(sc.background, sc.lighting_scale);
    RgbImage img = new_image(w, h, Pixel{bg, bg, bg});

    if (ball_pos) {
        const double dx = ball_pos->first - pose.x;
        const double dy = ball_pos->second - pose.y;
        const double z = dx * std::cos(pose.theta) + dy * std::sin(pose.theta);
        if (z > 0.0) {
            // Lateral offset is positive to the right of the heading, so a
            // ball on the right lands right of the image center.
            const double lateral = dx * std::sin(pose.theta) - dy * std::cos(pose.theta);
            const double cx = w / 2.0 + sc.camera.focal_px * lateral / z;
            // The ball center sits at camera height, so it projects onto
            // the horizontal midline.
            const double cy = h / 2.0;
            const double r = sc.camera.focal_px * sc.camera.ball_radius_m / z;
            const Pixel col{scale_channel(sc.ball_color.r, sc.lighting_scale),
                            scale_channel(sc.ball_color.g, sc.lighting_scale),
                            scale_channel(sc.ball_color.b, sc.lighting_scale)};
            const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
            const int x1 = std::min(w - 1, static_cast<int>(std::ceil(cx + r)));
            const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
            const int y1 = std::min(h - 1, static_cast<int>(std::ceil(cy + r)));
            const double r2 = r * r;
            for (int y = y0; y <= y1; ++y) {
                Pixel* row = img.row(y);
                const double fy = y - cy;
                for (int x = x0; x <= x1; ++x) {
                    const double fx = x - cx;
                    if (fx * fx + fy * fy <= r2) row[x] = col;
                }
            }
        }
    }

    const long long noise_count =
        static_cast<long long>(sc.noise_density * static_cast<double>(w) * h);
    for (long long i = 0; i < noise_count; ++i) {
        const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(w)));
        const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(h)));
        img.row(y)[x] = sc.ball_color;
    }
    return img;
}

SimResult run_closed_loop(const Scenario& sc, FrameSink* sink) {
    sc.validate();
    SimResult res;
    res.mcu.init();
    XorShift64Star rng(sc.seed);
    RobotPose pose = sc.robot_start;
    StepAccumulator acc_left, acc_right;
    res.trace.reserve(static_cast<std::size_t>(sc.max_ticks));

    for (int tick = 0; tick < sc.max_ticks; ++tick) {
        const double t = tick * sc.drive.tick;
        const auto ball = sc.ball_position(t);
        const RgbImage frame = render_frame(sc, ball, pose, rng);
        if (sink) sink->on_frame(tick, frame);

        const auto det = detect_ball(frame, sc.pipeline);
        const Command cmd = decide(det, sc.controller);
        if (cmd == Command::Stop) res.issued_stop = true;

        res.mcu.uart().write(encode_command(cmd));
        res.mcu.tick();

        const WheelRates rates = command_to_wheels(res.mcu.active_command(), sc.drive);
        const long long dl = acc_left.advance(rates.left, sc.drive.tick);
        const long long dr = acc_right.advance(rates.right, sc.drive.tick);
        advance_driver(res.left_driver, dl);
        advance_driver(res.right_driver, dr);
        pose = update_pose(pose, dl, dr, sc.drive);

        TraceRow row;
        row.tick = tick;
        row.t = t;
        row.pose = pose;
        row.detected = det.has_value();
        if (det) {
            row.cx = det->cx;
            row.cy = det->cy;
            row.box = det->box_size;
        }
        row.command = cmd;
        row.left_steps = dl;
        row.right_steps = dr;
        res.trace.push_back(row);
    }

    res.final_pose = pose;
    return res;
}

void write_trace(std::ostream& out, const SimResult& result, const Scenario& sc) {
    out << "# rng=" << XorShift64Star::kName << " seed=" << sc.seed << "\n";
    out << "tick,t,x,y,theta,detected,cx,cy,box,command,left_steps,right_steps\n";
    char buf[256];
    for (const TraceRow& r : result.trace) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f,%d,%.6f,%.6f,%d,%c,%lld,%lld\n",
                      r.tick, r.t, r.pose.x, r.pose.y, r.pose.theta, r.detected ? 1 : 0, r.cx,
                      r.cy, r.box, command_letter(r.command), r.left_steps, r.right_steps);
        out << buf;
    }
    long long blinks = 0, accepted = 0, unknown = 0;
    for (const McuEvent& e : result.mcu.events()) {
        switch (e.kind) {
            case McuEvent::Kind::LedBlink: ++blinks; break;
            case McuEvent::Kind::CommandAccepted: ++accepted; break;
            case McuEvent::Kind::UnknownByte: ++unknown; break;
        }
    }
    out << "# mcu_events: led_blink=" << blinks << " command_accepted=" << accepted
        << " unknown_byte=" << unknown << " uart_dropped=" << result.mcu.uart().dropped()
        << "\n";
}

}  // namespace ballbot
