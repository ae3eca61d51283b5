#pragma once

#include <optional>

#include "ballbot/pipeline.hpp"

namespace ballbot {

// Motion commands sent to the microcontroller. Values are the wire bytes.
enum class Command : char {
    Search = 'P',
    Forward = 'F',
    Stop = 'S',
    Backward = 'B',
    Left = 'L',
    Right = 'R',
};

inline char command_letter(Command c) {
    return static_cast<char>(c);
}

struct ControllerParams {
    int frame_center_x = 320;
    int dead_zone = 70;
    int fwd_min = 10;   // box sizes below this are treated as no detection
    int stop_lo = 130;  // stop band, inclusive on both ends
    int stop_hi = 230;

    void validate() const;
};

// Picks the command for one frame. Rules are checked in order; the first
// match wins:
//   1. no detection, or box_size < fwd_min            -> Search
//   2. box_size > stop_hi                             -> Backward
//   3. stop_lo <= box_size <= stop_hi                 -> Stop
//   4. |round(cx) - frame_center_x| <= dead_zone      -> Forward
//   5. round(cx) < frame_center_x - dead_zone ? Left : Right
// cx is rounded half away from zero.
Command decide(double cx, int box_size, const ControllerParams& p);
Command decide(const std::optional<Detection>& det, const ControllerParams& p);

}  // namespace ballbot
