#include "wormsim/telemetry.hpp"

#include <stdexcept>

#include "wormsim/rng.hpp"

namespace wormsim {

namespace {

constexpr std::uint8_t kFlagLeft = 0x01;
constexpr std::uint8_t kFlagRight = 0x02;

std::uint8_t xor_checksum(std::span<const std::uint8_t> bytes) {
    std::uint8_t sum = 0;
    for (std::uint8_t b : bytes) sum ^= b;
    return sum;
}

}  // namespace

std::string_view to_string(DecodeStatus status) {
    switch (status) {
        case DecodeStatus::Ok: return "ok";
        case DecodeStatus::BadLength: return "bad length";
        case DecodeStatus::BadSync: return "bad sync";
        case DecodeStatus::BadChecksum: return "bad checksum";
        case DecodeStatus::BadReserved: return "bad reserved bits";
    }
    return "?";
}

Frame encode(const SensorPacket& p) {
    Frame f{};
    f[0] = kFrameSync;
    f[1] = p.seq;
    f[2] = static_cast<std::uint8_t>((p.contact.left ? kFlagLeft : 0) | (p.contact.right ? kFlagRight : 0));
    f[3] = static_cast<std::uint8_t>(p.light.left >> 8);
    f[4] = static_cast<std::uint8_t>(p.light.left & 0xFF);
    f[5] = static_cast<std::uint8_t>(p.light.right >> 8);
    f[6] = static_cast<std::uint8_t>(p.light.right & 0xFF);
    f[9] = xor_checksum(std::span(f).first(9));
    return f;
}

DecodeResult decode(std::span<const std::uint8_t> bytes) {
    DecodeResult r;
    if (bytes.size() != kFrameSize) {
        r.status = DecodeStatus::BadLength;
        return r;
    }
    if (bytes[0] != kFrameSync) {
        r.status = DecodeStatus::BadSync;
        return r;
    }
    if (xor_checksum(bytes.first(9)) != bytes[9]) {
        r.status = DecodeStatus::BadChecksum;
        return r;
    }
    if ((bytes[2] & ~(kFlagLeft | kFlagRight)) != 0 || bytes[7] != 0 || bytes[8] != 0) {
        r.status = DecodeStatus::BadReserved;
        return r;
    }
    r.packet.seq = bytes[1];
    r.packet.contact = {(bytes[2] & kFlagLeft) != 0, (bytes[2] & kFlagRight) != 0};
    r.packet.light.left = static_cast<std::uint16_t>((bytes[3] << 8) | bytes[4]);
    r.packet.light.right = static_cast<std::uint16_t>((bytes[5] << 8) | bytes[6]);
    return r;
}

void validate(const ChannelConfig& cfg) {
    if (!(cfg.rate_hz > 0.0)) throw std::invalid_argument("channel.rate_hz must be > 0");
    if (!(cfg.drop_probability >= 0.0 && cfg.drop_probability <= 1.0))
        throw std::invalid_argument("channel.drop_probability must be in [0, 1]");
    if (!(cfg.corrupt_probability >= 0.0 && cfg.corrupt_probability <= 1.0))
        throw std::invalid_argument("channel.corrupt_probability must be in [0, 1]");
}

std::optional<SensorPacket> channel_step(const SensorPacket& packet, const ChannelConfig& cfg, Rng& rng,
                                         ChannelStats* stats) {
    ChannelStats scratch;
    ChannelStats& s = stats ? *stats : scratch;
    ++s.sent;

    if (cfg.drop_probability > 0.0 && rng.bernoulli(cfg.drop_probability)) {
        ++s.dropped;
        return std::nullopt;
    }
    Frame frame = encode(packet);
    if (cfg.corrupt_probability > 0.0 && rng.bernoulli(cfg.corrupt_probability)) {
        const auto bit = rng.below(kFrameSize * 8);
        frame[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    }
    const DecodeResult result = decode(frame);
    if (!result.ok()) {
        ++s.rejected;
        return std::nullopt;
    }
    ++s.delivered;
    return result.packet;
}

void LatestFrameSlot::publish(const Frame& frame) {
    std::lock_guard lock(mutex_);
    frame_ = frame;
}

std::optional<Frame> LatestFrameSlot::take() {
    std::lock_guard lock(mutex_);
    auto out = frame_;
    frame_.reset();
    return out;
}

}  // namespace wormsim
