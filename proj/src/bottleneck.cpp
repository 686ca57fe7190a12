#include "ssdo/bottleneck.hpp"

#include <algorithm>
#include <bit>

#include "ssdo/errors.hpp"

namespace ssdo {

BottleneckIndex::BottleneckIndex(SptPtr spt, std::vector<EdgeRank> labels)
    : spt_(std::move(spt)), labels_(std::move(labels)) {
    if (!spt_) throw ContractError("BottleneckIndex needs a tree");
    const std::uint32_t n = spt_->num_vertices();
    if (labels_.size() != n) throw ContractError("one label per vertex required");

    pos_value_.resize(n);
    for (VertexId v = 0; v < n; ++v) pos_value_[spt_->path_pos(v)] = labels_[v].value;

    // table_[j][i] = leftmost argmin of positions [i, i + 2^(j+1))
    std::uint32_t levels = n > 1 ? std::bit_width(n) - 1 : 0;
    table_.resize(levels);
    for (std::uint32_t j = 0; j < levels; ++j) {
        const std::uint32_t width = 1u << (j + 1);
        table_[j].resize(n - width + 1);
        for (std::uint32_t i = 0; i + width <= n; ++i) {
            std::uint32_t a = j == 0 ? i : table_[j - 1][i];
            std::uint32_t b = j == 0 ? i + 1 : table_[j - 1][i + width / 2];
            table_[j][i] = pos_value_[a] <= pos_value_[b] ? a : b;
        }
    }
}

std::uint32_t BottleneckIndex::argmin_leftmost(std::uint32_t lo, std::uint32_t hi) const {
    if (lo == hi) return lo;
    const std::uint32_t j = std::bit_width(hi - lo + 1) - 1;  // largest 2^j <= length
    const std::uint32_t a = table_[j - 1][lo];
    const std::uint32_t b = table_[j - 1][hi - (1u << j) + 1];
    return pos_value_[a] <= pos_value_[b] ? a : b;
}

std::uint32_t BottleneckIndex::table_min(std::uint32_t lo, std::uint32_t hi) const {
    return pos_value_[argmin_leftmost(lo, hi)];
}

std::uint32_t BottleneckIndex::argmin_rightmost(std::uint32_t lo, std::uint32_t hi) const {
    const std::uint32_t target = table_min(lo, hi);
    std::uint32_t a = lo, b = hi;
    while (a < b) {
        const std::uint32_t mid = a + (b - a + 1) / 2;
        if (table_min(mid, hi) == target)
            a = mid;
        else
            b = mid - 1;
    }
    return a;
}

std::pair<VertexId, EdgeRank> BottleneckIndex::min_on_path(VertexId x, VertexId y) const {
    const Spt& s = *spt_;
    if (x >= s.num_vertices() || y >= s.num_vertices())
        throw ContractError("min_on_path endpoint out of range");

    // Positions [lo, hi]; toward_lo: the x-to-y walk crosses the segment
    // with descending positions.
    struct Seg {
        std::uint32_t lo, hi;
        bool toward_lo;
    };
    std::vector<Seg> segs;
    segs.reserve(8);

    VertexId a = x, b = y;
    std::vector<Seg> from_y;
    from_y.reserve(8);
    while (s.path_head(a) != s.path_head(b)) {
        const VertexId ha = s.path_head(a), hb = s.path_head(b);
        if (s.depth_hops(ha) >= s.depth_hops(hb)) {
            segs.push_back({s.path_pos(ha), s.path_pos(a), true});
            a = static_cast<VertexId>(s.parent(ha));
        } else {
            from_y.push_back({s.path_pos(hb), s.path_pos(b), false});
            b = static_cast<VertexId>(s.parent(hb));
        }
    }
    segs.push_back({std::min(s.path_pos(a), s.path_pos(b)), std::max(s.path_pos(a), s.path_pos(b)),
                    s.path_pos(a) > s.path_pos(b)});
    for (auto it = from_y.rbegin(); it != from_y.rend(); ++it) segs.push_back(*it);

    std::uint32_t best = EdgeRank::kInfiniteValue;
    for (const Seg& sg : segs) best = std::min(best, table_min(sg.lo, sg.hi));

    for (const Seg& sg : segs) {
        if (table_min(sg.lo, sg.hi) != best) continue;
        const std::uint32_t pos = sg.toward_lo ? argmin_rightmost(sg.lo, sg.hi)
                                               : argmin_leftmost(sg.lo, sg.hi);
        return {s.path_order(pos), EdgeRank{best}};
    }
    return {x, labels_[x]};  // unreachable: the first loop always finds `best`
}

std::optional<VertexId> first_qualifying_on_path(const BottleneckIndex& ix, VertexId v,
                                                 VertexId t, EdgeRank r) {
    const Spt& s = ix.spt();
    if (!s.is_descendant(t, v))
        throw ContractError("first_qualifying_on_path: " + std::to_string(v) +
                            " is not an ancestor of " + std::to_string(t));

    VertexId a = v, b = t;
    while (a != b) {
        const std::uint32_t hops = s.depth_hops(b) - s.depth_hops(a);
        const std::uint32_t mid_depth = s.depth_hops(a) + (hops + 1) / 2;
        const VertexId x = s.level_ancestor(b, s.depth_hops(b) - mid_depth);
        const VertexId xp = static_cast<VertexId>(s.parent(x));
        if (ix.min_on_path(a, xp).second <= r) {
            b = xp;  // a qualifying vertex exists in the upper half
        } else if (ix.min_on_path(x, b).second <= r) {
            a = x;  // only the lower half holds one
        } else {
            return std::nullopt;
        }
    }
    if (ix.label(a) <= r) return a;
    return std::nullopt;
}

}  // namespace ssdo
