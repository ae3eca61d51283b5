#include "ballbot/mcu.hpp"

#include <stdexcept>

namespace ballbot {

void McuEmulator::init() {
    if (phase_ != McuPhase::Uninitialized) {
        throw std::logic_error("mcu: init called twice");
    }
    phase_ = McuPhase::Blinking;
    events_.push_back({McuEvent::Kind::LedBlink, 0});
    events_.push_back({McuEvent::Kind::LedBlink, 0});
    phase_ = McuPhase::Running;
}

void McuEmulator::tick() {
    if (phase_ != McuPhase::Running) {
        throw std::logic_error("mcu: tick before init");
    }
    while (const auto byte = uart_.poll()) {
        if (const auto cmd = decode_command(*byte)) {
            active_ = *cmd;
            events_.push_back({McuEvent::Kind::CommandAccepted, *byte});
        } else {
            events_.push_back({McuEvent::Kind::UnknownByte, *byte});
        }
    }
}

}  // namespace ballbot
