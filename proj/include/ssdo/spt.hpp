#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ssdo/graph.hpp"

namespace ssdo {

// Total order on tree edges: the preorder number of the child endpoint.
// Finite ranks are 1..n-1; the sentinel infinity() compares after all of them.
struct EdgeRank {
    static constexpr std::uint32_t kInfiniteValue = 0xffffffffu;

    std::uint32_t value = kInfiniteValue;

    static constexpr EdgeRank infinity() { return {}; }
    bool is_infinite() const { return value == kInfiniteValue; }

    friend bool operator==(EdgeRank, EdgeRank) = default;
    friend auto operator<=>(EdgeRank a, EdgeRank b) { return a.value <=> b.value; }
};

// Shortest-path tree rooted at the graph's source, frozen after build.
// Carries the preorder numbering (which doubles as the tree-edge rank),
// subtree intervals, and a heavy-path decomposition for O(log n)
// level-ancestor and path queries. Concurrent reads are safe.
class Spt {
public:
    // Runs the deterministic tie-broken Dijkstra and freezes the tree.
    // Throws BuildError if any vertex is unreachable from the source.
    static Spt build(const Graph& g);

    // Reassembles a tree from stored parents and distances (children are
    // re-sorted by ascending id, so the preorder is reproduced exactly).
    // Throws ContainerError-worthy inconsistencies as ValidationError.
    static Spt from_parts(VertexId source, std::vector<std::int32_t> parent,
                          std::vector<Weight> dist);

    VertexId num_vertices() const { return static_cast<VertexId>(parent_.size()); }
    VertexId source() const { return source_; }

    std::int32_t parent(VertexId v) const { return parent_[v]; }
    std::int32_t parent_edge(VertexId v) const { return parent_edge_[v]; }
    Weight dist(VertexId v) const { return dist_[v]; }
    std::uint32_t depth_hops(VertexId v) const { return depth_[v]; }

    // Preorder interval of the subtree rooted at v: [pre_in, pre_out).
    std::uint32_t pre_in(VertexId v) const { return pre_in_[v]; }
    std::uint32_t pre_out(VertexId v) const { return pre_out_[v]; }

    // Vertex with preorder number i; order(0) is the source.
    VertexId order(std::uint32_t i) const { return order_[i]; }

    // True iff x lies in the subtree rooted at v (x == v included).
    bool is_descendant(VertexId x, VertexId v) const {
        return pre_in_[v] <= pre_in_[x] && pre_in_[x] < pre_out_[v];
    }

    // Weight of the tree path from an ancestor z down to t.
    // Throws ContractError if z is not an ancestor of t (z == t allowed).
    Weight tree_distance(VertexId z, VertexId t) const;

    // Ancestor of x exactly hops_up tree edges above it.
    // Throws ContractError if hops_up exceeds the depth of x.
    VertexId level_ancestor(VertexId x, std::uint32_t hops_up) const;

    // Rank of the tree edge (parent(v), v). Throws ContractError at the root.
    EdgeRank rank_of(VertexId v) const;

    // Child endpoint of the tree edge with the given finite rank.
    VertexId rank_vertex(EdgeRank r) const;

    // Rank of (a,b) if it is a tree edge, nullopt otherwise.
    std::optional<EdgeRank> tree_edge_rank(VertexId a, VertexId b) const;

    // Heavy-path data: every path is a contiguous block of positions.
    VertexId path_head(VertexId v) const { return head_[v]; }
    std::uint32_t path_pos(VertexId v) const { return pos_[v]; }
    VertexId path_order(std::uint32_t pos) const { return pos_order_[pos]; }

private:
    void finish();

    VertexId source_ = 0;
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> parent_edge_;
    std::vector<Weight> dist_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint32_t> pre_in_;
    std::vector<std::uint32_t> pre_out_;
    std::vector<VertexId> order_;
    std::vector<VertexId> head_;
    std::vector<std::uint32_t> pos_;
    std::vector<VertexId> pos_order_;
};

using SptPtr = std::shared_ptr<const Spt>;

inline SptPtr build_spt(const Graph& g) { return std::make_shared<const Spt>(Spt::build(g)); }

}  // namespace ssdo
