#include "ssdo/oracle_eps.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ssdo/errors.hpp"
#include "ssdo/exclusion_sssp.hpp"

namespace ssdo {

namespace {

constexpr double kRelSlack = 1e-9;  // float headroom used by internal checks only

std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw ContractError("epsilon must be in (0,1)");
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

// Geometric ceilings a_i = 2 / ((sqrt(1+eps)-1) * (1+eps)^(i/2)), i = 0..k+1.
// Bucket i holds ratios in [a_{i+1}, a_i); a_{k+1} <= 1 <= ratio always.
std::vector<double> ceilings(double epsilon, std::uint32_t k) {
    std::vector<double> a(k + 2);
    const double a0 = 2.0 / (std::sqrt(1.0 + epsilon) - 1.0);
    for (std::uint32_t i = 0; i < a.size(); ++i)
        a[i] = a0 / std::pow(1.0 + epsilon, static_cast<double>(i) / 2.0);
    return a;
}

}  // namespace

std::string to_string(AnswerEpsCase c) {
    switch (c) {
        case AnswerEpsCase::kNoFaultEffect: return "NO_FAULT_EFFECT";
        case AnswerEpsCase::kSPrimeCandidate: return "S_PRIME_CANDIDATE";
        case AnswerEpsCase::kBucketCandidate: return "BUCKET_CANDIDATE";
    }
    return "?";
}

std::uint32_t OracleEps::bucket_bound(double epsilon) {
    require_epsilon(epsilon);
    const double q = 2.0 * std::log(2.0 / (std::sqrt(1.0 + epsilon) - 1.0)) / std::log(1.0 + epsilon);
    return static_cast<std::uint32_t>(std::floor(q));
}

OracleEps OracleEps::build(const Graph& g, SptPtr spt, double epsilon, bool strict) {
    require_epsilon(epsilon);
    if (!spt) throw ContractError("OracleEps needs a tree");
    if (strict) require_full_coverage(g, *spt);

    const Spt& t = *spt;
    const VertexId n = g.num_vertices();
    const std::uint32_t k = bucket_bound(epsilon);
    const double sq = std::sqrt(1.0 + epsilon);
    const std::vector<double> a = ceilings(epsilon, k);

    OracleEps o;
    o.spt_ = std::move(spt);
    o.epsilon_ = epsilon;
    o.detour_.assign(n >= 1 ? n - 1 : 0, kUnreachable);
    o.fingerprint_ = fingerprint_of(g);
    o.edge_keys_ = ssdo::edge_keys(g);

    ExclusionSssp solver(g, t);
    std::vector<Weight> last_len(n, kUnreachable);  // most recent stored length per vertex
    std::vector<Weight> est(n, kUnreachable);       // running estimate for the current edge
    std::vector<std::uint32_t> per_vertex(n, 0);
    EpsBuildStats& st = o.stats_;

    for (std::uint32_t r = 1; r < n; ++r) {
        const VertexId v = t.rank_vertex({r});
        solver.solve(v);

        const Weight dv = solver.dist(v);
        o.detour_[r - 1] = dv;
        ++st.detour_entries;
        if (dv > last_len[v]) ++st.monotonicity_violations;
        last_len[v] = dv;
        est[v] = dv;

        for (std::uint32_t i = t.pre_in(v) + 1; i < t.pre_out(v); ++i) {
            const VertexId z = t.order(i);
            const VertexId zp = static_cast<VertexId>(t.parent(z));
            const Weight step = est[zp] + (t.dist(z) - t.dist(zp));
            const Weight cand = std::min(last_len[z], step);
            const Weight exact = solver.dist(z);

            if (cand > sq * exact) {
                // Store the exact length; the estimate resets to it.
                const Weight old = last_len[z];
                if (old != kUnreachable && !(sq * exact < old * (1.0 + kRelSlack)))
                    ++st.decay_violations;
                if (exact > old) ++st.monotonicity_violations;
                last_len[z] = exact;
                est[z] = exact;

                const Weight base = t.dist(z);
                if (base > 0.0) {
                    const std::uint32_t j = per_vertex[z]++;
                    if (j >= a.size() || !(exact < a[j] * base * (1.0 + kRelSlack)))
                        ++st.magnitude_violations;
                    o.entries_.push_back({z, {r}, exact, 0});
                    ++st.type1_entries;
                    st.max_entries_per_vertex = std::max(st.max_entries_per_vertex, per_vertex[z]);
                }
            } else {
                est[z] = cand;
            }

            if (est[z] < exact) ++st.sandwich_violations;
            if (est[z] > sq * exact * (1.0 + kRelSlack)) ++st.sandwich_violations;
        }
    }

    // Bucket placement by ratio: closed-form index first, then the
    // half-open interval predicate decides (scanning one step either way
    // on float disagreement).
    const double log_ratio_unit = std::log(1.0 + epsilon);
    for (Entry& e : o.entries_) {
        const double ratio = e.value / t.dist(e.vertex);
        double q = 2.0 * std::log(a[0] / ratio) / log_ratio_unit;
        std::int64_t i0 = static_cast<std::int64_t>(std::floor(q));
        if (i0 < 0) i0 = 0;
        if (i0 > k) i0 = k;
        bool placed = false;
        for (std::int64_t delta : {0, -1, 1}) {
            const std::int64_t i = i0 + delta;
            if (i < 0 || i > static_cast<std::int64_t>(k)) continue;
            if (ratio < a[i] && ratio >= a[i + 1]) {
                e.bucket = static_cast<std::uint32_t>(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            e.bucket = static_cast<std::uint32_t>(i0);
            ++st.placement_failures;
        }
    }

    // Per-bucket uniqueness: two entries of one vertex can never share a
    // bucket; count (and keep the earlier rank) if data proves otherwise.
    {
        std::vector<std::vector<std::uint32_t>> seen(n);
        for (const Entry& e : o.entries_) {
            auto& buckets_of = seen[e.vertex];
            if (std::find(buckets_of.begin(), buckets_of.end(), e.bucket) != buckets_of.end())
                ++st.bucket_conflicts;
            else
                buckets_of.push_back(e.bucket);
        }
    }

    o.assemble_buckets();
    return o;
}

void OracleEps::assemble_buckets() {
    const VertexId n = spt_->num_vertices();
    const std::uint32_t count = bucket_bound(epsilon_) + 1;
    std::vector<std::vector<EdgeRank>> labels(count, std::vector<EdgeRank>(n));
    std::vector<std::vector<Weight>> values(count, std::vector<Weight>(n, kUnreachable));
    std::vector<std::uint64_t> sizes(count, 0);

    for (const Entry& e : entries_) {
        if (e.bucket >= count || e.vertex >= n) throw ValidationError("entry outside bucket range");
        if (!labels[e.bucket][e.vertex].is_infinite()) continue;  // keep the earlier rank
        labels[e.bucket][e.vertex] = e.fault;
        values[e.bucket][e.vertex] = e.value;
        ++sizes[e.bucket];
    }

    buckets_.clear();
    buckets_.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i)
        buckets_.push_back({std::move(values[i]), sizes[i], BottleneckIndex(spt_, std::move(labels[i]))});
}

OracleEps OracleEps::from_parts(SptPtr spt, double epsilon, std::vector<Weight> detour_by_rank,
                                std::vector<Entry> entries, Fingerprint fp,
                                std::vector<std::uint64_t> sorted_edge_keys, EpsBuildStats stats) {
    require_epsilon(epsilon);
    if (!spt) throw ContractError("OracleEps needs a tree");
    const VertexId n = spt->num_vertices();
    if (detour_by_rank.size() + 1 != n)
        throw ValidationError("oracle part sizes do not match the tree");
    if (!std::is_sorted(sorted_edge_keys.begin(), sorted_edge_keys.end()))
        throw ValidationError("edge keys must be sorted");
    for (const Entry& e : entries)
        if (e.vertex >= n || e.fault.is_infinite() || e.fault.value == 0 || e.fault.value >= n)
            throw ValidationError("entry references a vertex or edge outside the tree");

    OracleEps o;
    o.spt_ = std::move(spt);
    o.epsilon_ = epsilon;
    o.detour_ = std::move(detour_by_rank);
    o.entries_ = std::move(entries);
    o.fingerprint_ = fp;
    o.edge_keys_ = std::move(sorted_edge_keys);
    o.stats_ = stats;
    o.assemble_buckets();
    return o;
}

bool OracleEps::is_graph_edge(VertexId u, VertexId v) const {
    if (u == v) return false;
    return std::binary_search(edge_keys_.begin(), edge_keys_.end(), pair_key(u, v));
}

Weight OracleEps::detour(EdgeRank r) const {
    if (r.is_infinite() || r.value == 0 || r.value > detour_.size())
        throw ContractError("rank " + std::to_string(r.value) + " does not name a tree edge");
    return detour_[r.value - 1];
}

EdgeRank OracleEps::bucket_label(std::uint32_t i, VertexId v) const {
    if (i >= buckets_.size() || v >= spt_->num_vertices())
        throw ContractError("bucket or vertex out of range");
    return buckets_[i].index.label(v);
}

Weight OracleEps::bucket_value(std::uint32_t i, VertexId v) const {
    if (i >= buckets_.size() || v >= spt_->num_vertices())
        throw ContractError("bucket or vertex out of range");
    return buckets_[i].value[v];
}

std::uint64_t OracleEps::bucket_size(std::uint32_t i) const {
    if (i >= buckets_.size()) throw ContractError("bucket out of range");
    return buckets_[i].size;
}

std::optional<std::pair<VertexId, Weight>> OracleEps::search_bucket(std::uint32_t i, VertexId v,
                                                                    VertexId t, EdgeRank fail) const {
    if (i >= buckets_.size()) throw ContractError("bucket out of range");
    const Bucket& b = buckets_[i];
    auto z = first_qualifying_on_path(b.index, v, t, fail);
    if (!z) return std::nullopt;
    return std::make_pair(*z, b.value[*z]);
}

AnswerEps OracleEps::query(VertexId fu, VertexId fv, VertexId t) const {
    const VertexId n = spt_->num_vertices();
    if (t >= n) throw ContractError("target out of range");
    if (fu >= n || fv >= n || !is_graph_edge(fu, fv))
        throw QueryError("(" + std::to_string(fu) + "," + std::to_string(fv) +
                         ") is not an edge of the indexed graph");

    const auto rank = spt_->tree_edge_rank(fu, fv);
    if (!rank) return {spt_->dist(t), AnswerEpsCase::kNoFaultEffect, -1};
    const VertexId v = spt_->rank_vertex(*rank);
    if (!spt_->is_descendant(t, v)) return {spt_->dist(t), AnswerEpsCase::kNoFaultEffect, -1};

    AnswerEps best{detour_[rank->value - 1] + (spt_->dist(t) - spt_->dist(v)),
                   AnswerEpsCase::kSPrimeCandidate, -1};
    for (std::uint32_t i = 0; i < buckets_.size(); ++i) {
        if (buckets_[i].size == 0) continue;
        auto hit = search_bucket(i, v, t, *rank);
        if (!hit) continue;
        const Weight cand = hit->second + (spt_->dist(t) - spt_->dist(hit->first));
        if (cand < best.value) best = {cand, AnswerEpsCase::kBucketCandidate, static_cast<std::int32_t>(i)};
    }
    return best;
}

}  // namespace ssdo
