#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>

#include "wormsim/sensing.hpp"

namespace wormsim {

class Rng;

/// Nose-cone to control-board datum.
struct SensorPacket {
    std::uint8_t seq = 0;
    ContactFlags contact;
    LightPair light;

    bool operator==(const SensorPacket&) const = default;
};

// Frame layout, one byte per index:
//   0     sync 0xAA
//   1     seq
//   2     flags: bit0 contact_left, bit1 contact_right, bits 2-7 zero
//   3-4   light_left, big-endian
//   5-6   light_right, big-endian
//   7-8   reserved, zero
//   9     XOR of bytes 0-8
inline constexpr std::size_t kFrameSize = 10;
inline constexpr std::uint8_t kFrameSync = 0xAA;

using Frame = std::array<std::uint8_t, kFrameSize>;

enum class DecodeStatus { Ok, BadLength, BadSync, BadChecksum, BadReserved };

std::string_view to_string(DecodeStatus status);

struct DecodeResult {
    DecodeStatus status = DecodeStatus::Ok;
    SensorPacket packet;

    bool ok() const { return status == DecodeStatus::Ok; }
};

Frame encode(const SensorPacket& packet);
DecodeResult decode(std::span<const std::uint8_t> bytes);

struct ChannelConfig {
    double rate_hz = 5.0;
    double drop_probability = 0.0;
    double corrupt_probability = 0.0;

    bool operator==(const ChannelConfig&) const = default;
};

void validate(const ChannelConfig& cfg);

struct ChannelStats {
    std::size_t sent = 0;
    std::size_t delivered = 0;
    std::size_t dropped = 0;
    std::size_t rejected = 0;
};

/// Pushes one packet over the simulated radio link: encode, maybe drop, maybe
/// flip a single bit, decode. Returns the packet only if the receiver accepts
/// the frame. Draws come from `rng` only for non-zero probabilities, so a
/// lossless channel leaves the generator untouched.
std::optional<SensorPacket> channel_step(const SensorPacket& packet, const ChannelConfig& cfg, Rng& rng,
                                         ChannelStats* stats = nullptr);

/// Single-slot mailbox between the sensing and control tasks. A newer frame
/// overwrites an unread older one.
class LatestFrameSlot {
public:
    void publish(const Frame& frame);
    std::optional<Frame> take();

private:
    std::mutex mutex_;
    std::optional<Frame> frame_;
};

}  // namespace wormsim
