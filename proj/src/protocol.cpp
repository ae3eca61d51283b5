#include "ballbot/protocol.hpp"

namespace ballbot {

std::uint8_t encode_command(Command c) {
    return static_cast<std::uint8_t>(command_letter(c));
}

std::optional<Command> decode_command(std::uint8_t byte) {
    switch (byte) {
        case 'P': return Command::Search;
        case 'F': return Command::Forward;
        case 'S': return Command::Stop;
        case 'B': return Command::Backward;
        case 'L': return Command::Left;
        case 'R': return Command::Right;
        default: return std::nullopt;
    }
}

bool UartBuffer::write(std::uint8_t byte) {
    if (count_ == kCapacity) {
        ++dropped_;
        return false;
    }
    buf_[(head_ + count_) % kCapacity] = byte;
    ++count_;
    return true;
}

std::optional<std::uint8_t> UartBuffer::poll() {
    if (count_ == 0) return std::nullopt;
    const std::uint8_t b = buf_[head_];
    head_ = (head_ + 1) % kCapacity;
    --count_;
    return b;
}

}  // namespace ballbot
