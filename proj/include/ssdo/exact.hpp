#pragma once

#include <span>
#include <vector>

#include "ssdo/graph.hpp"
#include "ssdo/spt.hpp"

namespace ssdo {

// Dense post-fault distances: one row per tree edge, each row a full
// single-exclusion shortest-path run. Quadratic storage -- intended for
// verification and small instances, not for scale.
class ExactTable {
public:
    // Rows are independent and are computed on a small thread pool.
    static ExactTable build(const Graph& g, SptPtr spt);

    // d_{G-e}(source, t) for the tree edge of finite rank r.
    Weight query(EdgeRank r, VertexId t) const;

    // Same, addressed by endpoints. Throws ContractError when (u,v) is not
    // a tree edge: a fault there never changes any distance, and callers
    // answer it with the fault-free distance directly.
    Weight query(VertexId u, VertexId v, VertexId t) const;

    std::span<const Weight> row(EdgeRank r) const;

    const Spt& spt() const { return *spt_; }

private:
    SptPtr spt_;
    std::vector<Weight> rows_;  // (n-1) rows of n entries; rank r at (r-1)*n
};

}  // namespace ssdo
