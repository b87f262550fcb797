#pragma once

#include <cstdint>
#include <limits>

namespace topchain {

using Vertex = std::uint32_t;  // vertex id in the temporal graph
using DagId = std::uint32_t;   // vertex id in the transformed graph
using Time = std::uint64_t;

inline constexpr DagId kNoDagVertex = std::numeric_limits<DagId>::max();
inline constexpr Time kInfiniteTime = std::numeric_limits<Time>::max();

// Closed interval [begin, end]; end == kInfiniteTime means unbounded.
struct TimeInterval {
    Time begin = 0;
    Time end = kInfiniteTime;

    bool valid() const { return begin <= end; }
    bool contains(Time t) const { return begin <= t && t <= end; }
};

}  // namespace topchain
