#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ballbot/controller.hpp"

namespace ballbot {

// One byte per command, ASCII letter of the command.
std::uint8_t encode_command(Command c);
std::optional<Command> decode_command(std::uint8_t byte);

// Fixed-capacity FIFO byte queue modelling the receive buffer on the
// microcontroller side of the serial link. Writes beyond capacity drop the
// incoming byte (newest loses) and count the drop.
class UartBuffer {
public:
    static constexpr std::size_t kCapacity = 16;

    // Returns false and counts a drop when the buffer is full.
    bool write(std::uint8_t byte);

    // Oldest byte, or nullopt when empty.
    std::optional<std::uint8_t> poll();

    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    std::uint64_t dropped() const { return dropped_; }

private:
    std::uint8_t buf_[kCapacity] = {};
    std::size_t head_ = 0;   // next byte to poll
    std::size_t count_ = 0;
    std::uint64_t dropped_ = 0;
};

}  // namespace ballbot
