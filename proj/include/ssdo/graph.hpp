#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ssdo {

using Weight = double;
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Distance of a vertex that cannot be reached.
inline constexpr Weight kUnreachable = std::numeric_limits<Weight>::infinity();

// Sentinel edge id: "no edge". Passing it as an exclusion excludes nothing.
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct Edge {
    VertexId u;
    VertexId v;
    Weight w;
};

struct HalfEdge {
    VertexId to;
    EdgeId edge;
};

// Weighted undirected graph with a distinguished source vertex.
// Immutable once constructed; adjacency is CSR-packed, so concurrent reads
// are safe. Weights are non-negative finite doubles; parallel edges and
// self-loops are rejected.
class Graph {
public:
    Graph() = default;

    // Validates and adopts the edge list. Throws ValidationError.
    static Graph from_edges(VertexId n, VertexId source, std::vector<Edge> edges);

    // Text format: first significant line "n m s", then m lines "u v w".
    // Lines whose first non-blank character is '#' are comments.
    // Throws ParseError / ValidationError.
    static Graph parse(std::istream& in);
    static Graph parse(std::string_view text);

    VertexId num_vertices() const { return n_; }
    EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }
    VertexId source() const { return source_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    std::span<const HalfEdge> neighbors(VertexId u) const {
        return {adj_.data() + adj_offsets_[u], adj_.data() + adj_offsets_[u + 1]};
    }

    // Edge id of the undirected pair (u,v), if present.
    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

    // Order-independent digest of the weighted edge set.
    std::uint64_t weight_checksum() const;

private:
    VertexId n_ = 0;
    VertexId source_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> adj_offsets_;
    std::vector<HalfEdge> adj_;
};

// Compact identity of a graph, used to match oracles against inputs.
struct Fingerprint {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::uint32_t source = 0;
    std::uint64_t checksum = 0;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint_of(const Graph& g);

// Sorted keys ((min(u,v) << 32) | max(u,v)) of all edges; supports
// binary-search membership tests without the graph at hand.
std::vector<std::uint64_t> edge_keys(const Graph& g);

struct SsspResult {
    std::vector<Weight> dist;
    std::vector<std::int32_t> parent;       // predecessor vertex, -1 if none
    std::vector<std::int32_t> parent_edge;  // edge used to reach the vertex, -1 if none
};

// Dijkstra from `root`, optionally ignoring one edge. Deterministic:
// the heap pops equal distances by smaller vertex id, and among
// equal-distance relaxations of an unsettled vertex the smaller parent id
// wins. `excluded` >= num_edges() (including kNoEdge) excludes nothing.
SsspResult sssp(const Graph& g, VertexId root, EdgeId excluded = kNoEdge);

class Spt;

// Tree edges whose removal disconnects some vertex from the source
// (i.e. the bridges of g), as sorted edge ids. Empty when every single
// edge fault leaves all vertices reachable.
std::vector<EdgeId> validate_fault_coverage(const Graph& g, const Spt& spt);

}  // namespace ssdo
