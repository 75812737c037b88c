#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace toptree {

// Thrown on contract violations: stale handles, operations on vertices/edges
// that do not satisfy the documented preconditions, etc. The structure is
// never left partially mutated when one of these escapes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline constexpr std::uint32_t npos = 0xffffffffu;
}

// Dense slot + generation counter. Slots are recycled through a free list;
// the generation lets the owning store detect stale handles.
template <class Tag>
struct Handle {
    std::uint32_t slot = detail::npos;
    std::uint32_t gen = 0;

    constexpr bool is_none() const { return slot == detail::npos; }
    friend constexpr bool operator==(Handle a, Handle b) {
        return a.slot == b.slot && a.gen == b.gen;
    }
    friend constexpr bool operator!=(Handle a, Handle b) { return !(a == b); }
};

struct VertexTag {};
struct EdgeTag {};
struct NodeTag {};

using VertexId = Handle<VertexTag>;
using EdgeId = Handle<EdgeTag>;
using NodeId = Handle<NodeTag>;

template <class Tag>
inline constexpr Handle<Tag> none_handle{};

} // namespace toptree

template <class Tag>
struct std::hash<toptree::Handle<Tag>> {
    size_t operator()(toptree::Handle<Tag> h) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t(h.gen) << 32) | h.slot);
    }
};
