#include "ssdo/spt.hpp"

#include <algorithm>
#include <cmath>

#include "ssdo/errors.hpp"

namespace ssdo {

namespace {

// Children of every vertex, ascending by id (vertex ids ascend, so a single
// forward sweep produces sorted lists).
std::vector<std::vector<VertexId>> child_lists(const std::vector<std::int32_t>& parent) {
    std::vector<std::vector<VertexId>> children(parent.size());
    for (VertexId v = 0; v < parent.size(); ++v)
        if (parent[v] >= 0) children[static_cast<VertexId>(parent[v])].push_back(v);
    return children;
}

}  // namespace

Spt Spt::build(const Graph& g) {
    SsspResult r = sssp(g, g.source());
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (r.dist[v] == kUnreachable)
            throw BuildError("vertex " + std::to_string(v) + " is unreachable from the source");

    Spt t;
    t.source_ = g.source();
    t.parent_ = std::move(r.parent);
    t.parent_edge_ = std::move(r.parent_edge);
    t.dist_ = std::move(r.dist);
    t.finish();
    return t;
}

Spt Spt::from_parts(VertexId source, std::vector<std::int32_t> parent, std::vector<Weight> dist) {
    if (parent.size() != dist.size() || parent.empty())
        throw ValidationError("tree arrays are empty or of mismatched length");
    if (source >= parent.size() || parent[source] != -1)
        throw ValidationError("tree source is out of range or has a parent");
    for (VertexId v = 0; v < parent.size(); ++v) {
        if (v != source && (parent[v] < 0 || parent[v] >= static_cast<std::int32_t>(parent.size())))
            throw ValidationError("vertex " + std::to_string(v) + " has an invalid parent");
        if (!(dist[v] >= 0.0) || !std::isfinite(dist[v]))
            throw ValidationError("vertex " + std::to_string(v) + " has an invalid distance");
    }

    Spt t;
    t.source_ = source;
    t.parent_ = std::move(parent);
    t.parent_edge_.assign(t.parent_.size(), -1);
    t.dist_ = std::move(dist);
    t.finish();
    return t;
}

void Spt::finish() {
    const VertexId n = static_cast<VertexId>(parent_.size());
    auto children = child_lists(parent_);

    depth_.assign(n, 0);
    pre_in_.assign(n, 0);
    pre_out_.assign(n, 0);
    order_.clear();
    order_.reserve(n);

    // Preorder, children visited in ascending id order.
    std::vector<VertexId> stack{source_};
    std::uint32_t visited = 0;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        pre_in_[x] = visited++;
        order_.push_back(x);
        const auto& cs = children[x];
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
            depth_[*it] = depth_[x] + 1;
            stack.push_back(*it);
        }
    }
    if (visited != n)
        throw ValidationError("tree parents do not connect every vertex to the source");

    // Subtree sizes by a reverse-preorder sweep; pre_out follows.
    std::vector<std::uint32_t> size(n, 1);
    for (std::uint32_t i = n; i-- > 1;) {
        VertexId v = order_[i];
        size[static_cast<VertexId>(parent_[v])] += size[v];
    }
    for (VertexId v = 0; v < n; ++v) pre_out_[v] = pre_in_[v] + size[v];

    // Heavy-path decomposition: heaviest child continues the path
    // (ties to the smallest id), producing contiguous position blocks.
    std::vector<VertexId> heavy(n, n);  // n = none
    for (VertexId v = 0; v < n; ++v) {
        std::uint32_t best = 0;
        for (VertexId c : children[v])
            if (size[c] > best) {
                best = size[c];
                heavy[v] = c;
            }
    }

    head_.assign(n, source_);
    pos_.assign(n, 0);
    pos_order_.assign(n, 0);
    std::uint32_t cursor = 0;
    stack.assign(1, source_);
    while (!stack.empty()) {
        VertexId h = stack.back();
        stack.pop_back();
        for (VertexId x = h; x != n; x = heavy[x]) {
            head_[x] = h;
            pos_[x] = cursor;
            pos_order_[cursor++] = x;
            for (auto it = children[x].rbegin(); it != children[x].rend(); ++it)
                if (*it != heavy[x]) stack.push_back(*it);
        }
    }
}

Weight Spt::tree_distance(VertexId z, VertexId t) const {
    if (!is_descendant(t, z))
        throw ContractError("tree_distance: " + std::to_string(z) + " is not an ancestor of " +
                            std::to_string(t));
    return dist_[t] - dist_[z];
}

VertexId Spt::level_ancestor(VertexId x, std::uint32_t hops_up) const {
    if (hops_up > depth_[x])
        throw ContractError("level_ancestor: " + std::to_string(hops_up) +
                            " hops above vertex " + std::to_string(x) + " leaves the tree");
    const std::uint32_t target = depth_[x] - hops_up;
    while (depth_[head_[x]] > target) x = static_cast<VertexId>(parent_[head_[x]]);
    return pos_order_[pos_[x] - (depth_[x] - target)];
}

EdgeRank Spt::rank_of(VertexId v) const {
    if (v == source_) throw ContractError("the root has no parent edge");
    return {pre_in_[v]};
}

VertexId Spt::rank_vertex(EdgeRank r) const {
    if (r.is_infinite() || r.value == 0 || r.value >= num_vertices())
        throw ContractError("rank " + std::to_string(r.value) + " does not name a tree edge");
    return order_[r.value];
}

std::optional<EdgeRank> Spt::tree_edge_rank(VertexId a, VertexId b) const {
    if (a >= num_vertices() || b >= num_vertices() || a == b) return std::nullopt;
    if (parent_[a] == static_cast<std::int32_t>(b)) return rank_of(a);
    if (parent_[b] == static_cast<std::int32_t>(a)) return rank_of(b);
    return std::nullopt;
}

}  // namespace ssdo
