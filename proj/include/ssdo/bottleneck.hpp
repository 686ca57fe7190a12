#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ssdo/spt.hpp"

namespace ssdo {

// Minimum-label vertex on tree paths. Labels are edge ranks per vertex;
// the index decomposes a path into heavy-path segments and answers each
// with a sparse table. Build O(n log n), query O(log n). When several
// vertices share the minimum label, the one nearest the first query
// endpoint wins.
class BottleneckIndex {
public:
    BottleneckIndex(SptPtr spt, std::vector<EdgeRank> labels);

    // Minimum label over the tree path from x to y and the vertex carrying
    // it (ties resolved toward x). x and y may be anywhere in the tree.
    std::pair<VertexId, EdgeRank> min_on_path(VertexId x, VertexId y) const;

    EdgeRank label(VertexId v) const { return labels_[v]; }
    const Spt& spt() const { return *spt_; }

private:
    std::uint32_t table_min(std::uint32_t lo, std::uint32_t hi) const;       // value
    std::uint32_t argmin_leftmost(std::uint32_t lo, std::uint32_t hi) const;  // position
    std::uint32_t argmin_rightmost(std::uint32_t lo, std::uint32_t hi) const;

    SptPtr spt_;
    std::vector<EdgeRank> labels_;          // by vertex
    std::vector<std::uint32_t> pos_value_;  // label value by heavy-path position
    std::vector<std::vector<std::uint32_t>> table_;  // table_[j][i]: leftmost argmin of [i, i+2^(j+1))
};

// First vertex on the downward tree path from v to t (v first) whose label
// precedes or equals r, or nullopt. v must be an ancestor of t (v == t
// allowed). Halving search: each round splits the remaining span at its
// hop midpoint and keeps the topmost half that still contains a
// qualifying vertex. O(log n) rounds.
std::optional<VertexId> first_qualifying_on_path(const BottleneckIndex& ix, VertexId v,
                                                 VertexId t, EdgeRank r);

}  // namespace ssdo
