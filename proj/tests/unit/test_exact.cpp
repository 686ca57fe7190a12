#include "corpus.hpp"
#include "doctest.h"
#include "ssdo/errors.hpp"
#include "ssdo/exact.hpp"
#include "ssdo/exclusion_sssp.hpp"

using namespace ssdo;

TEST_CASE("4-cycle: the row for the first path edge is the detour set") {
    const Graph g = testkit::cycle4();
    const ExactTable t = ExactTable::build(g, build_spt(g));
    const auto row = t.row(EdgeRank{1});
    CHECK(std::vector<Weight>(row.begin(), row.end()) == std::vector<Weight>{0, 7, 6, 5});
    CHECK(t.query(EdgeRank{3}, 1) == 1.0);  // t outside the cut subtree
    CHECK(t.query(2, 3, 1) == 1.0);         // same, addressed by endpoints
}

TEST_CASE("triangle rows for both tree edges") {
    const Graph g = testkit::triangle();
    const ExactTable t = ExactTable::build(g, build_spt(g));
    const auto r1 = t.row(EdgeRank{1});
    const auto r2 = t.row(EdgeRank{2});
    CHECK(std::vector<Weight>(r1.begin(), r1.end()) == std::vector<Weight>{0, 22, 12});
    CHECK(std::vector<Weight>(r2.begin(), r2.end()) == std::vector<Weight>{0, 1, 12});
    CHECK(t.query(0, 1, 2) == 12.0);
}

TEST_CASE("a bridge removal leaves the far side unreachable") {
    const Graph g = Graph::parse("2 1 0\n0 1 1\n");
    const ExactTable t = ExactTable::build(g, build_spt(g));
    CHECK(t.query(0, 1, 1) == kUnreachable);
    CHECK(t.query(0, 1, 0) == 0.0);
}

TEST_CASE("non-tree faults are rejected: they never change a distance") {
    const Graph g = testkit::cycle4();
    const ExactTable t = ExactTable::build(g, build_spt(g));
    CHECK_THROWS_AS(t.query(3, 0, 2), ContractError);
    CHECK_THROWS_AS(t.query(0, 2, 1), ContractError);  // not an edge at all
}

TEST_CASE("rows equal exclusion runs and dominate fault-free distances") {
    std::mt19937_64 rng(555);
    for (int it = 0; it < 25; ++it) {
        const VertexId n = 4 + static_cast<VertexId>(rng() % 61);
        const Graph g = testkit::random_connected(rng, n, static_cast<EdgeId>(rng() % (2 * n)));
        SptPtr spt = build_spt(g);
        const ExactTable t = ExactTable::build(g, spt);
        for (std::uint32_t r = 1; r < n; ++r) {
            const VertexId v = spt->rank_vertex(EdgeRank{r});
            const EdgeId failed = static_cast<EdgeId>(spt->parent_edge(v));
            const auto want = testkit::bellman_ford(g, g.source(), failed);
            const auto row = t.row(EdgeRank{r});
            for (VertexId x = 0; x < n; ++x) {
                CHECK(row[x] == want[x]);
                CHECK(row[x] >= spt->dist(x));
                if (!spt->is_descendant(x, v)) CHECK(row[x] == spt->dist(x));
            }
        }
    }
}

TEST_CASE("threaded and single-threaded table builds agree") {
    std::mt19937_64 rng(3133);
    // 80 rows crosses the threading threshold; compare against per-row runs.
    const Graph g = testkit::random_biconnected(rng, 81, 160);
    SptPtr spt = build_spt(g);
    const ExactTable t = ExactTable::build(g, spt);
    for (std::uint32_t r = 1; r < 81; r += 7) {
        const VertexId v = spt->rank_vertex(EdgeRank{r});
        const SsspResult want = sssp(g, g.source(), static_cast<EdgeId>(spt->parent_edge(v)));
        const auto row = t.row(EdgeRank{r});
        for (VertexId x = 0; x < 81; ++x) CHECK(row[x] == want.dist[x]);
    }
}

TEST_CASE("subtree exclusion solves match full excluded runs") {
    std::mt19937_64 rng(909);
    for (int it = 0; it < 20; ++it) {
        const VertexId n = 4 + static_cast<VertexId>(rng() % 61);
        const Graph g = testkit::random_connected(rng, n, static_cast<EdgeId>(rng() % (2 * n)));
        SptPtr spt = build_spt(g);
        ExclusionSssp solver(g, *spt);
        for (std::uint32_t r = 1; r < n; ++r) {
            const VertexId v = spt->rank_vertex(EdgeRank{r});
            solver.solve(v);
            const auto want = testkit::bellman_ford(
                g, g.source(), static_cast<EdgeId>(spt->parent_edge(v)));
            for (std::uint32_t i = spt->pre_in(v); i < spt->pre_out(v); ++i) {
                const VertexId x = spt->order(i);
                CHECK(solver.dist(x) == want[x]);
            }
        }
    }
}

TEST_CASE("exclusion distances are fenced to the solved subtree") {
    const Graph g = testkit::cycle4();
    SptPtr spt = build_spt(g);
    ExclusionSssp solver(g, *spt);
    CHECK_THROWS_AS(solver.dist(2), ContractError);  // nothing solved yet
    solver.solve(2);
    CHECK(solver.dist(2) == 6.0);
    CHECK(solver.dist(3) == 5.0);
    CHECK_THROWS_AS(solver.dist(1), ContractError);  // outside the subtree of 2
}
