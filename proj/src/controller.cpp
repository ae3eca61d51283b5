#include "ballbot/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace ballbot {

void ControllerParams::validate() const {
    if (!(fwd_min < stop_lo && stop_lo < stop_hi)) {
        throw std::invalid_argument("controller: need fwd_min < stop_lo < stop_hi");
    }
    if (!(0 < dead_zone && dead_zone < frame_center_x)) {
        throw std::invalid_argument("controller: need 0 < dead_zone < frame_center_x");
    }
}

Command decide(double cx, int box_size, const ControllerParams& p) {
    p.validate();
    if (box_size < p.fwd_min) return Command::Search;
    if (box_size > p.stop_hi) return Command::Backward;
    if (box_size >= p.stop_lo) return Command::Stop;
    const long long cx_px = std::llround(cx);
    if (std::llabs(cx_px - p.frame_center_x) <= p.dead_zone) return Command::Forward;
    return cx_px < p.frame_center_x - p.dead_zone ? Command::Left : Command::Right;
}

Command decide(const std::optional<Detection>& det, const ControllerParams& p) {
    if (!det) {
        p.validate();
        return Command::Search;
    }
    return decide(det->cx, det->box_size, p);
}

}  // namespace ballbot
