#pragma once

#include "repsim/node_id.hpp"
#include "repsim/reputation.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>

namespace repsim {

// Fixed 8-byte reputation-exchange frame, big-endian throughout:
//   byte 0    protocol version (0x01)
//   byte 1    message type
//   bytes 2-5 subject address
//   bytes 6-7 reputation, quantized to value * 65535 (zero for requests)
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::size_t kWireSize = 8;

enum class MsgType : std::uint8_t { Request = 0x00, Response = 0x01, Broadcast = 0x02 };

struct RepMessage {
    MsgType type = MsgType::Request;
    NodeId subject;
    std::optional<Reputation> rep; // absent for requests

    static RepMessage request(NodeId subject) { return {MsgType::Request, subject, {}}; }
    static RepMessage response(NodeId subject, Reputation r) {
        return {MsgType::Response, subject, r};
    }
    static RepMessage broadcast(NodeId subject, Reputation r) {
        return {MsgType::Broadcast, subject, r};
    }

    bool operator==(const RepMessage&) const = default;
};

enum class DecodeError { BadLength, BadVersion, BadType };

std::array<std::uint8_t, kWireSize> encode(const RepMessage& msg);
std::variant<RepMessage, DecodeError> decode(std::span<const std::uint8_t> bytes);

} // namespace repsim
