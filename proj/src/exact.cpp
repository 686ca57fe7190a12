#include "ssdo/exact.hpp"

#include <algorithm>
#include <cstring>
#include <thread>

#include "ssdo/errors.hpp"

namespace ssdo {

ExactTable ExactTable::build(const Graph& g, SptPtr spt) {
    if (!spt) throw ContractError("ExactTable needs a tree");
    const VertexId n = g.num_vertices();
    ExactTable t;
    t.spt_ = std::move(spt);
    if (n < 2) return t;

    const std::uint32_t rows = n - 1;
    t.rows_.resize(static_cast<std::size_t>(rows) * n);

    auto fill = [&](std::uint32_t first, std::uint32_t last) {
        for (std::uint32_t r = first; r < last; ++r) {
            const VertexId v = t.spt_->rank_vertex({r + 1});
            const EdgeId failed = static_cast<EdgeId>(t.spt_->parent_edge(v));
            SsspResult res = sssp(g, g.source(), failed);
            std::memcpy(t.rows_.data() + static_cast<std::size_t>(r) * n, res.dist.data(),
                        n * sizeof(Weight));
        }
    };

    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), rows);
    if (workers <= 1 || rows < 64) {
        fill(0, rows);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint32_t chunk = (rows + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint32_t first = w * chunk;
            const std::uint32_t last = std::min(rows, first + chunk);
            if (first < last) pool.emplace_back(fill, first, last);
        }
        for (std::thread& th : pool) th.join();
    }
    return t;
}

Weight ExactTable::query(EdgeRank r, VertexId t) const {
    if (r.is_infinite() || r.value == 0 || r.value >= spt_->num_vertices())
        throw ContractError("rank " + std::to_string(r.value) + " does not name a tree edge");
    if (t >= spt_->num_vertices()) throw ContractError("target out of range");
    return rows_[static_cast<std::size_t>(r.value - 1) * spt_->num_vertices() + t];
}

Weight ExactTable::query(VertexId u, VertexId v, VertexId t) const {
    auto r = spt_->tree_edge_rank(u, v);
    if (!r)
        throw ContractError("(" + std::to_string(u) + "," + std::to_string(v) +
                            ") is not a tree edge; a fault there changes no distance");
    return query(*r, t);
}

std::span<const Weight> ExactTable::row(EdgeRank r) const {
    if (r.is_infinite() || r.value == 0 || r.value >= spt_->num_vertices())
        throw ContractError("rank " + std::to_string(r.value) + " does not name a tree edge");
    const VertexId n = spt_->num_vertices();
    return {rows_.data() + static_cast<std::size_t>(r.value - 1) * n, n};
}

}  // namespace ssdo
