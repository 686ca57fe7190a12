#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ssdo/graph.hpp"
#include "ssdo/spt.hpp"

namespace ssdo {

// Replacement distances after one tree-edge fault, computed only where they
// can change: when (parent(v), v) fails, every vertex outside the subtree of
// v keeps its original distance, so the solver seeds a Dijkstra frontier
// with the edges crossing into the subtree and never leaves it. Scratch is
// epoch-stamped and reused, so sweeping all n-1 tree edges costs
// sum-of-subtree-sizes work instead of n-1 full runs.
class ExclusionSssp {
public:
    ExclusionSssp(const Graph& g, const Spt& spt);

    // Recomputes distances for the subtree of v, with (parent(v), v) failed.
    // v must not be the source.
    void solve(VertexId v);

    // d_{G-e}(source, x) for x inside the last solved subtree.
    // Throws ContractError for vertices outside it.
    Weight dist(VertexId x) const;

private:
    const Graph* g_;
    const Spt* spt_;
    std::vector<Weight> dist_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<std::pair<Weight, VertexId>> heap_;
};

}  // namespace ssdo
