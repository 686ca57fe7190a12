#include "ssdo/exclusion_sssp.hpp"

#include <algorithm>

#include "ssdo/errors.hpp"

namespace ssdo {

ExclusionSssp::ExclusionSssp(const Graph& g, const Spt& spt) : g_(&g), spt_(&spt) {
    dist_.assign(g.num_vertices(), kUnreachable);
    stamp_.assign(g.num_vertices(), 0);
}

void ExclusionSssp::solve(VertexId v) {
    if (v >= g_->num_vertices() || v == spt_->source())
        throw ContractError("solve expects a non-root vertex");

    const std::uint32_t lo = spt_->pre_in(v), hi = spt_->pre_out(v);
    const EdgeId failed = static_cast<EdgeId>(spt_->parent_edge(v));
    ++epoch_;
    heap_.clear();

    for (std::uint32_t i = lo; i < hi; ++i) {
        const VertexId x = spt_->order(i);
        stamp_[x] = epoch_;
        dist_[x] = kUnreachable;
    }

    // Frontier: edges entering the subtree from outside, whose far endpoint
    // keeps its fault-free distance.
    auto greater = [](const std::pair<Weight, VertexId>& a, const std::pair<Weight, VertexId>& b) {
        return a > b;
    };
    for (std::uint32_t i = lo; i < hi; ++i) {
        const VertexId x = spt_->order(i);
        for (const HalfEdge& he : g_->neighbors(x)) {
            if (he.edge == failed || stamp_[he.to] == epoch_) continue;
            const Weight cand = spt_->dist(he.to) + g_->edge(he.edge).w;
            if (cand < dist_[x]) dist_[x] = cand;
        }
        if (dist_[x] < kUnreachable) heap_.push_back({dist_[x], x});
    }
    std::make_heap(heap_.begin(), heap_.end(), greater);

    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), greater);
        auto [d, x] = heap_.back();
        heap_.pop_back();
        if (d > dist_[x]) continue;  // stale entry
        for (const HalfEdge& he : g_->neighbors(x)) {
            const VertexId y = he.to;
            if (stamp_[y] != epoch_) continue;  // outside: distance already final
            const Weight cand = d + g_->edge(he.edge).w;
            if (cand < dist_[y]) {
                dist_[y] = cand;
                heap_.push_back({cand, y});
                std::push_heap(heap_.begin(), heap_.end(), greater);
            }
        }
    }
}

Weight ExclusionSssp::dist(VertexId x) const {
    if (x >= stamp_.size() || stamp_[x] != epoch_ || epoch_ == 0)
        throw ContractError("vertex " + std::to_string(x) + " is outside the last solved subtree");
    return dist_[x];
}

}  // namespace ssdo
