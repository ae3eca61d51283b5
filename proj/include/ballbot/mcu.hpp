#pragma once

#include <cstdint>
#include <vector>

#include "ballbot/controller.hpp"
#include "ballbot/protocol.hpp"

namespace ballbot {

enum class McuPhase {
    Uninitialized,
    Blinking,
    Running,
};

struct McuEvent {
    enum class Kind {
        LedBlink,
        CommandAccepted,
        UnknownByte,
    };

    Kind kind;
    std::uint8_t byte = 0;  // the wire byte for CommandAccepted / UnknownByte

    bool operator==(const McuEvent&) const = default;
};

// Firmware model for the drive-side microcontroller. Bytes arrive through
// the owned receive buffer; each tick drains everything queued and keeps the
// last valid command as the active one.
class McuEmulator {
public:
    // Startup sequence: blink the status LED twice, then accept commands.
    // Calling init twice is a programming error.
    void init();

    // Processes all pending bytes. Throws std::logic_error before init.
    void tick();

    UartBuffer& uart() { return uart_; }
    const UartBuffer& uart() const { return uart_; }

    McuPhase phase() const { return phase_; }
    Command active_command() const { return active_; }
    const std::vector<McuEvent>& events() const { return events_; }

private:
    UartBuffer uart_;
    McuPhase phase_ = McuPhase::Uninitialized;
    Command active_ = Command::Stop;
    std::vector<McuEvent> events_;
};

}  // namespace ballbot
