#include "repsim/rep_wire.hpp"

#include <cmath>

namespace repsim {

namespace {

std::uint16_t quantize(Reputation r) {
    // round-half-away-from-zero; values are in [0,1] so this is plain round()
    double scaled = std::round(r.value() * 65535.0);
    return static_cast<std::uint16_t>(scaled);
}

Reputation dequantize(std::uint16_t raw) {
    return Reputation(static_cast<double>(raw) / 65535.0);
}

} // namespace

std::array<std::uint8_t, kWireSize> encode(const RepMessage& msg) {
    std::array<std::uint8_t, kWireSize> out{};
    out[0] = kWireVersion;
    out[1] = static_cast<std::uint8_t>(msg.type);
    out[2] = static_cast<std::uint8_t>(msg.subject.addr >> 24);
    out[3] = static_cast<std::uint8_t>(msg.subject.addr >> 16);
    out[4] = static_cast<std::uint8_t>(msg.subject.addr >> 8);
    out[5] = static_cast<std::uint8_t>(msg.subject.addr);
    std::uint16_t q = msg.rep ? quantize(*msg.rep) : 0;
    out[6] = static_cast<std::uint8_t>(q >> 8);
    out[7] = static_cast<std::uint8_t>(q);
    return out;
}

std::variant<RepMessage, DecodeError> decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kWireSize) return DecodeError::BadLength;
    if (bytes[0] != kWireVersion) return DecodeError::BadVersion;
    if (bytes[1] > static_cast<std::uint8_t>(MsgType::Broadcast)) return DecodeError::BadType;

    RepMessage msg;
    msg.type = static_cast<MsgType>(bytes[1]);
    msg.subject.addr = (static_cast<std::uint32_t>(bytes[2]) << 24) |
                       (static_cast<std::uint32_t>(bytes[3]) << 16) |
                       (static_cast<std::uint32_t>(bytes[4]) << 8) |
                       static_cast<std::uint32_t>(bytes[5]);
    if (msg.type != MsgType::Request) {
        std::uint16_t raw = static_cast<std::uint16_t>((bytes[6] << 8) | bytes[7]);
        msg.rep = dequantize(raw);
    }
    return msg;
}

} // namespace repsim
