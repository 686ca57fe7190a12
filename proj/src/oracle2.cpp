#include "ssdo/oracle2.hpp"

#include <algorithm>
#include <utility>

#include "ssdo/errors.hpp"
#include "ssdo/exclusion_sssp.hpp"

namespace ssdo {

namespace {

// Fenwick tree with range-add / point-query, over preorder positions.
// Tracks, for every vertex, how many of its ancestors (itself included)
// are marked: marking t adds one to t's whole subtree interval.
class MarkCounter {
public:
    explicit MarkCounter(std::uint32_t n) : tree_(n + 1, 0) {}

    void add(std::uint32_t lo, std::uint32_t hi) {  // [lo, hi)
        for (std::uint32_t i = lo + 1; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
        for (std::uint32_t i = hi + 1; i < tree_.size(); i += i & (~i + 1)) --tree_[i];
    }

    std::int32_t at(std::uint32_t pos) const {
        std::int32_t s = 0;
        for (std::uint32_t i = pos + 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::int32_t> tree_;
};

std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

void require_full_coverage(const Graph& g, const Spt& spt) {
    std::vector<EdgeId> gaps = validate_fault_coverage(g, spt);
    if (gaps.empty()) return;
    std::string msg = "strict mode: single edge faults can disconnect the graph at";
    for (std::size_t i = 0; i < gaps.size() && i < 8; ++i)
        msg += " (" + std::to_string(g.edge(gaps[i]).u) + "," + std::to_string(g.edge(gaps[i]).v) + ")";
    if (gaps.size() > 8) msg += " ...";
    throw BuildError(msg);
}

}  // namespace

std::string to_string(Answer2Case c) {
    switch (c) {
        case Answer2Case::kNoFaultEffect: return "NO_FAULT_EFFECT";
        case Answer2Case::kDetourPath: return "DETOUR_PATH";
        case Answer2Case::kDoubledBase: return "DOUBLED_BASE";
    }
    return "?";
}

Oracle2::Oracle2(SptPtr spt, std::vector<Weight> detour, std::vector<EdgeRank> labels,
                 Fingerprint fp, std::vector<std::uint64_t> keys, std::uint64_t events)
    : spt_(std::move(spt)),
      detour_(std::move(detour)),
      fingerprint_(fp),
      edge_keys_(std::move(keys)),
      mark_events_(events),
      bvq_(spt_, std::move(labels)) {}

Oracle2 Oracle2::build(const Graph& g, SptPtr spt, bool strict) {
    if (!spt) throw ContractError("Oracle2 needs a tree");
    if (strict) require_full_coverage(g, *spt);

    const Spt& t = *spt;
    const VertexId n = g.num_vertices();
    std::vector<Weight> detour(n >= 1 ? n - 1 : 0, kUnreachable);
    std::vector<EdgeRank> labels(n);  // all infinite
    MarkCounter marks(n);
    ExclusionSssp solver(g, t);
    std::uint64_t events = 0;

    for (std::uint32_t r = 1; r < n; ++r) {
        const VertexId v = t.rank_vertex({r});
        const VertexId u = static_cast<VertexId>(t.parent(v));
        solver.solve(v);
        detour[r - 1] = solver.dist(v);

        const std::int32_t above_u = marks.at(t.pre_in(u));
        for (std::uint32_t i = t.pre_in(v); i < t.pre_out(v); ++i) {
            const VertexId tt = t.order(i);
            const Weight replacement = solver.dist(tt);
            const Weight canonical = detour[r - 1] + (t.dist(tt) - t.dist(v));
            if (canonical <= 2.0 * replacement) continue;
            if (marks.at(t.pre_in(tt)) - above_u > 0) continue;
            labels[tt] = {r};
            marks.add(t.pre_in(tt), t.pre_out(tt));
            ++events;
        }
    }

    return Oracle2(std::move(spt), std::move(detour), std::move(labels), fingerprint_of(g),
                   ssdo::edge_keys(g), events);
}

Oracle2 Oracle2::from_parts(SptPtr spt, std::vector<Weight> detour_by_rank,
                            std::vector<EdgeRank> labels, Fingerprint fp,
                            std::vector<std::uint64_t> sorted_edge_keys, std::uint64_t events) {
    if (!spt) throw ContractError("Oracle2 needs a tree");
    const VertexId n = spt->num_vertices();
    if (detour_by_rank.size() + 1 != n || labels.size() != n)
        throw ValidationError("oracle part sizes do not match the tree");
    if (!std::is_sorted(sorted_edge_keys.begin(), sorted_edge_keys.end()))
        throw ValidationError("edge keys must be sorted");
    return Oracle2(std::move(spt), std::move(detour_by_rank), std::move(labels), fp,
                   std::move(sorted_edge_keys), events);
}

bool Oracle2::is_graph_edge(VertexId u, VertexId v) const {
    if (u == v) return false;
    return std::binary_search(edge_keys_.begin(), edge_keys_.end(), pair_key(u, v));
}

Weight Oracle2::detour(EdgeRank r) const {
    if (r.is_infinite() || r.value == 0 || r.value > detour_.size())
        throw ContractError("rank " + std::to_string(r.value) + " does not name a tree edge");
    return detour_[r.value - 1];
}

std::uint64_t Oracle2::marked_count() const {
    std::uint64_t c = 0;
    for (VertexId v = 0; v < spt_->num_vertices(); ++v)
        if (!bvq_.label(v).is_infinite()) ++c;
    return c;
}

Answer2 Oracle2::query(VertexId fu, VertexId fv, VertexId t) const {
    const VertexId n = spt_->num_vertices();
    if (t >= n) throw ContractError("target out of range");
    if (fu >= n || fv >= n || !is_graph_edge(fu, fv))
        throw QueryError("(" + std::to_string(fu) + "," + std::to_string(fv) +
                         ") is not an edge of the indexed graph");

    const auto rank = spt_->tree_edge_rank(fu, fv);
    if (!rank) return {spt_->dist(t), Answer2Case::kNoFaultEffect};
    const VertexId v = spt_->rank_vertex(*rank);
    if (!spt_->is_descendant(t, v)) return {spt_->dist(t), Answer2Case::kNoFaultEffect};

    if (bvq_.min_on_path(v, t).second <= *rank)
        return {2.0 * spt_->dist(t), Answer2Case::kDoubledBase};
    return {detour_[rank->value - 1] + (spt_->dist(t) - spt_->dist(v)), Answer2Case::kDetourPath};
}

}  // namespace ssdo
