#include <doctest.h>

#include <deque>
#include <stdexcept>
#include <vector>

#include "ballbot/mcu.hpp"
#include "ballbot/rng.hpp"

using namespace ballbot;

namespace {

int count_kind(const std::vector<McuEvent>& events, McuEvent::Kind kind) {
    int n = 0;
    for (const auto& e : events) {
        if (e.kind == kind) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("boot sequence blinks twice and arms the stop command") {
    McuEmulator mcu;
    CHECK(mcu.phase() == McuPhase::Uninitialized);

    mcu.init();
    CHECK(mcu.phase() == McuPhase::Running);
    CHECK(mcu.active_command() == Command::Stop);

    REQUIRE(mcu.events().size() == 2);
    CHECK(mcu.events()[0].kind == McuEvent::Kind::LedBlink);
    CHECK(mcu.events()[1].kind == McuEvent::Kind::LedBlink);
}

TEST_CASE("double init and tick before init are programming errors") {
    McuEmulator mcu;
    CHECK_THROWS_AS(mcu.tick(), std::logic_error);
    mcu.init();
    CHECK_THROWS_AS(mcu.init(), std::logic_error);
}

TEST_CASE("a single byte updates the active command") {
    McuEmulator mcu;
    mcu.init();
    mcu.uart().write(0x46);
    mcu.tick();
    CHECK(mcu.active_command() == Command::Forward);
    CHECK(count_kind(mcu.events(), McuEvent::Kind::CommandAccepted) == 1);
}

TEST_CASE("the last valid byte in a tick wins but all are accepted") {
    McuEmulator mcu;
    mcu.init();
    mcu.uart().write(0x4C);
    mcu.uart().write(0x52);
    mcu.tick();
    CHECK(mcu.active_command() == Command::Right);
    CHECK(count_kind(mcu.events(), McuEvent::Kind::CommandAccepted) == 2);
}

TEST_CASE("unknown bytes are logged and leave the command alone") {
    McuEmulator mcu;
    mcu.init();
    mcu.uart().write(0x46);
    mcu.tick();

    mcu.uart().write(0x00);
    mcu.tick();
    CHECK(mcu.active_command() == Command::Forward);

    const auto& events = mcu.events();
    REQUIRE_FALSE(events.empty());
    CHECK(events.back().kind == McuEvent::Kind::UnknownByte);
    CHECK(events.back().byte == 0x00);
}

TEST_CASE("stop stays active until the first valid byte arrives") {
    McuEmulator mcu;
    mcu.init();
    mcu.uart().write(0x01);
    mcu.uart().write(0xFF);
    mcu.tick();
    CHECK(mcu.active_command() == Command::Stop);
    CHECK(count_kind(mcu.events(), McuEvent::Kind::UnknownByte) == 2);
}

TEST_CASE("an empty tick produces no events") {
    McuEmulator mcu;
    mcu.init();
    const auto before = mcu.events().size();
    mcu.tick();
    CHECK(mcu.events().size() == before);
    CHECK(mcu.active_command() == Command::Stop);
}

TEST_CASE("every tick drains the uart completely") {
    McuEmulator mcu;
    mcu.init();
    for (int i = 0; i < 10; ++i) mcu.uart().write(0x53);
    mcu.tick();
    CHECK(mcu.uart().empty());
}

TEST_CASE("random traffic matches a last-valid-wins reference") {
    const std::vector<uint8_t> letters{0x50, 0x46, 0x53, 0x42, 0x4C, 0x52};
    XorShift64Star rng(404);

    McuEmulator mcu;
    mcu.init();
    Command expected = Command::Stop;
    uint64_t expected_unknown = 0;
    uint64_t expected_accepted = 0;

    for (int round = 0; round < 2000; ++round) {
        const auto burst = rng.next_below(5);
        for (uint64_t i = 0; i < burst; ++i) {
            uint8_t b;
            if (rng.next_below(4) == 0) {
                b = static_cast<uint8_t>(rng.next_below(256));
            } else {
                b = letters[rng.next_below(letters.size())];
            }
            if (!mcu.uart().write(b)) continue;
            const auto cmd = decode_command(b);
            if (cmd.has_value()) {
                expected = *cmd;
                ++expected_accepted;
            } else {
                ++expected_unknown;
            }
        }
        mcu.tick();
        CHECK(mcu.active_command() == expected);
        CHECK(mcu.uart().empty());
    }

    const auto& events = mcu.events();
    CHECK(count_kind(events, McuEvent::Kind::UnknownByte) ==
          static_cast<int>(expected_unknown));
    CHECK(count_kind(events, McuEvent::Kind::CommandAccepted) ==
          static_cast<int>(expected_accepted));
    CHECK(count_kind(events, McuEvent::Kind::LedBlink) == 2);
}
