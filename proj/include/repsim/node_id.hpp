#pragma once

#include <compare>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>

namespace repsim {

// 32-bit node address, rendered as an IPv4 dotted quad.
struct NodeId {
    std::uint32_t addr = 0;

    auto operator<=>(const NodeId&) const = default;

    std::string str() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (addr >> 24) & 0xff,
                      (addr >> 16) & 0xff, (addr >> 8) & 0xff, addr & 0xff);
        return buf;
    }

    static std::optional<NodeId> parse(const std::string& s) {
        unsigned a, b, c, d;
        char tail;
        if (std::sscanf(s.c_str(), "%u.%u.%u.%u%c", &a, &b, &c, &d, &tail) != 4)
            return std::nullopt;
        if (a > 255 || b > 255 || c > 255 || d > 255) return std::nullopt;
        return NodeId{(a << 24) | (b << 16) | (c << 8) | d};
    }
};

} // namespace repsim

template <>
struct std::hash<repsim::NodeId> {
    std::size_t operator()(const repsim::NodeId& id) const noexcept {
        return std::hash<std::uint32_t>{}(id.addr);
    }
};
