#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssdo/bottleneck.hpp"
#include "ssdo/graph.hpp"
#include "ssdo/spt.hpp"

namespace ssdo {

enum class Answer2Case : std::uint8_t {
    kNoFaultEffect,  // the fault cannot lengthen the path to the target
    kDetourPath,     // detour to the cut subtree's root, then down the tree
    kDoubledBase,    // a marked ancestor certifies twice the fault-free distance
};

std::string to_string(Answer2Case c);

struct Answer2 {
    Weight value;
    Answer2Case kind;
};

// 2-stretch single-fault distance oracle over a fixed source. Stores one
// replacement distance per tree edge, one mark label per vertex, and a
// min-label path index -- O(n) words total. A query never touches the
// graph beyond an edge-membership check. Immutable after build.
//
// Build sweep (tree edges in rank order, subtree vertices in preorder):
// a vertex t is marked with the failing edge e when the canonical detour
// through the cut subtree's root overshoots twice the true replacement
// distance and no vertex between the subtree root and t is marked yet;
// marked ancestors are tracked with subtree-interval counters.
class Oracle2 {
public:
    // strict: refuse graphs where some single edge fault disconnects a
    // vertex (detours would be recorded as unreachable otherwise).
    static Oracle2 build(const Graph& g, SptPtr spt, bool strict = false);

    // Replacement distance estimate for target t when edge (fu,fv) fails.
    // Throws QueryError if (fu,fv) is not an edge, ContractError for bad t.
    Answer2 query(VertexId fu, VertexId fv, VertexId t) const;

    const Spt& spt() const { return *spt_; }
    const Fingerprint& fingerprint() const { return fingerprint_; }

    // d_{G-e}(source, v) for the rank-r tree edge with child endpoint v.
    Weight detour(EdgeRank r) const;
    std::uint32_t detour_count() const { return static_cast<std::uint32_t>(detour_.size()); }
    EdgeRank label(VertexId v) const { return bvq_.label(v); }
    std::uint32_t label_count() const { return spt_->num_vertices(); }
    std::uint64_t marked_count() const;
    std::uint64_t mark_events() const { return mark_events_; }

    bool is_graph_edge(VertexId u, VertexId v) const;
    const std::vector<std::uint64_t>& edge_keys() const { return edge_keys_; }

    // Reassembly hook for deserialization; performs size checks only.
    static Oracle2 from_parts(SptPtr spt, std::vector<Weight> detour_by_rank,
                              std::vector<EdgeRank> labels, Fingerprint fp,
                              std::vector<std::uint64_t> sorted_edge_keys,
                              std::uint64_t mark_events = 0);

private:
    Oracle2(SptPtr spt, std::vector<Weight> detour, std::vector<EdgeRank> labels, Fingerprint fp,
            std::vector<std::uint64_t> keys, std::uint64_t events);

    SptPtr spt_;
    std::vector<Weight> detour_;  // by rank, index r-1
    Fingerprint fingerprint_;
    std::vector<std::uint64_t> edge_keys_;  // sorted, for membership checks
    std::uint64_t mark_events_ = 0;
    BottleneckIndex bvq_;
};

}  // namespace ssdo
