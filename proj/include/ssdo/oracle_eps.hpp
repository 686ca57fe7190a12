#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssdo/bottleneck.hpp"
#include "ssdo/graph.hpp"
#include "ssdo/spt.hpp"

namespace ssdo {

enum class AnswerEpsCase : std::uint8_t {
    kNoFaultEffect,    // the fault cannot lengthen the path to the target
    kSPrimeCandidate,  // per-edge detour to the cut subtree's root won
    kBucketCandidate,  // a stored landmark distance from one ratio bucket won
};

std::string to_string(AnswerEpsCase c);

struct AnswerEps {
    Weight value;
    AnswerEpsCase kind;
    std::int32_t bucket = -1;  // bucket index for kBucketCandidate, else -1
};

// Build-time health counters. A correct build leaves every *_violations
// counter at zero; they exist so tests can assert the internal guarantees
// instead of trusting them.
struct EpsBuildStats {
    std::uint64_t type1_entries = 0;      // stored landmark distances (S)
    std::uint64_t detour_entries = 0;     // per-edge detours (S'), always n-1
    std::uint32_t max_entries_per_vertex = 0;
    std::uint64_t sandwich_violations = 0;      // value outside [exact, sqrt(1+eps)*exact]
    std::uint64_t decay_violations = 0;         // consecutive entries shrank too slowly
    std::uint64_t monotonicity_violations = 0;  // a vertex's running value increased
    std::uint64_t magnitude_violations = 0;     // j-th entry above its geometric ceiling
    std::uint64_t bucket_conflicts = 0;         // two entries of one vertex in one bucket
    std::uint64_t placement_failures = 0;       // entry fit no bucket
};

// (1+eps)-stretch single-fault distance oracle. During one sweep over tree
// edges (rank order) and subtree vertices (preorder), a running
// per-vertex estimate follows the recurrence
//     cand(t,e) = min{ last(t), cand(parent(t), e) + w(parent(t), t) },
// and whenever cand overshoots sqrt(1+eps) times the true replacement
// distance, that distance is stored as a landmark entry and the estimate
// resets. Entries land in geometric ratio buckets by
// d_{G-e}(s,z) / d_G(s,z); each bucket keeps a min-label path index so a
// query can locate, per bucket, the topmost stored landmark whose entry
// predates the failing edge. Storage: n-1 detours + at most (k+1) entries
// per vertex, k = floor(2 log(2/(sqrt(1+eps)-1)) / log(1+eps)).
class OracleEps {
public:
    // Number of geometric buckets minus one, for epsilon in (0,1).
    static std::uint32_t bucket_bound(double epsilon);

    static OracleEps build(const Graph& g, SptPtr spt, double epsilon, bool strict = false);

    AnswerEps query(VertexId fu, VertexId fv, VertexId t) const;

    // Topmost vertex z on the tree path from v down to t whose bucket-i
    // entry predates (rank-wise) the failing edge, with its stored
    // distance. v must be an ancestor of t.
    std::optional<std::pair<VertexId, Weight>> search_bucket(std::uint32_t i, VertexId v,
                                                             VertexId t, EdgeRank fail) const;

    double epsilon() const { return epsilon_; }
    std::uint32_t bucket_count() const { return static_cast<std::uint32_t>(buckets_.size()); }
    const Spt& spt() const { return *spt_; }
    const Fingerprint& fingerprint() const { return fingerprint_; }
    const EpsBuildStats& stats() const { return stats_; }

    Weight detour(EdgeRank r) const;
    std::uint32_t detour_count() const { return static_cast<std::uint32_t>(detour_.size()); }

    struct Entry {
        VertexId vertex;
        EdgeRank fault;   // edge whose failure produced the entry
        Weight value;     // exact replacement distance at the time
        std::uint32_t bucket;
    };
    const std::vector<Entry>& entries() const { return entries_; }

    EdgeRank bucket_label(std::uint32_t i, VertexId v) const;
    Weight bucket_value(std::uint32_t i, VertexId v) const;
    std::uint64_t bucket_size(std::uint32_t i) const;

    bool is_graph_edge(VertexId u, VertexId v) const;
    const std::vector<std::uint64_t>& edge_keys() const { return edge_keys_; }

    // Reassembly hook for deserialization; performs size/shape checks only.
    static OracleEps from_parts(SptPtr spt, double epsilon, std::vector<Weight> detour_by_rank,
                                std::vector<Entry> entries, Fingerprint fp,
                                std::vector<std::uint64_t> sorted_edge_keys, EpsBuildStats stats);

private:
    struct Bucket {
        std::vector<Weight> value;  // by vertex; meaningful where label is finite
        std::uint64_t size = 0;
        BottleneckIndex index;
    };

    OracleEps() = default;
    void assemble_buckets();

    SptPtr spt_;
    double epsilon_ = 0;
    std::vector<Weight> detour_;  // by rank, index r-1
    std::vector<Entry> entries_;
    Fingerprint fingerprint_;
    std::vector<std::uint64_t> edge_keys_;
    EpsBuildStats stats_;
    std::vector<Bucket> buckets_;
};

}  // namespace ssdo
