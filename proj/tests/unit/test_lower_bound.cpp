#include <cmath>
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "ssdo/errors.hpp"
#include "ssdo/exact.hpp"
#include "ssdo/lower_bound.hpp"
#include "ssdo/spt.hpp"

using namespace ssdo;

namespace {

LowerBoundInstance gen(std::uint32_t eta, double k = 1.0, double delta = 1.0, double gamma = 1.0,
                       std::optional<double> y = std::nullopt) {
    LowerBoundParams p;
    p.eta = eta;
    p.k = k;
    p.delta = delta;
    p.gamma = gamma;
    p.y = y;
    return gen_lower_bound(p);
}

}  // namespace

TEST_CASE("desk-scale instance: eta = 4, unit parameters") {
    const LowerBoundInstance inst = gen(4, 1.0, 1.0, 1.0, 1.0);

    CHECK(inst.y == 1.0);
    REQUIRE(inst.x.size() == 4);
    CHECK(inst.x[0] == 3.0);
    CHECK(inst.x[1] == 5.0);
    CHECK(inst.x[2] == 7.0);
    CHECK(inst.x[3] == 9.0);
    CHECK(inst.z_eta() == 10.0);
    CHECK(inst.additive_bound(77.0) == 1.0);  // delta = 1 flattens the gap

    const Graph& g = inst.graph;
    CHECK(g.num_vertices() == 13);
    CHECK(g.num_edges() == 28);  // 3*eta + eta^2
    CHECK(g.source() == 4);
    CHECK(inst.source() == 4);
    CHECK(inst.u(0) == 0);
    CHECK(inst.t(1) == 5);
    CHECK(inst.v(1) == 9);
    CHECK(inst.first_bipartite_edge() == 12);

    // Construction order: path, star, spokes, bipartite.
    CHECK(g.edge(inst.path_edge(1)).u == 1);
    CHECK(g.edge(inst.path_edge(1)).v == 0);
    CHECK(g.edge(inst.path_edge(1)).w == 0.0);
    CHECK(g.edge(4).u == 0);
    CHECK(g.edge(4).v == 5);
    CHECK(g.edge(4).w == 1.0);
    CHECK(g.edge(8).u == 1);
    CHECK(g.edge(8).v == 9);
    CHECK(g.edge(8).w == 3.0);
    CHECK(g.edge(12).u == 5);
    CHECK(g.edge(12).v == 9);
    CHECK(g.edge(12).w == 1.0);
    for (std::uint32_t i = 1; i <= 4; ++i)
        CHECK(g.edge(2 * 4 + i - 1).w == inst.x[i - 1]);
}

TEST_CASE("derived star weight is the smallest admissible power of two") {
    CHECK(gen(4).y == 1.0);               // bound k/2 = 0.5 at delta = 1
    CHECK(gen(3, 2.0).y == 2.0);          // bound exactly 1 -> strictly above
    CHECK(gen(5, 4.0).y == 4.0);          // bound exactly 2 -> strictly above
    CHECK(gen(4, 3.0).y == 2.0);          // bound 1.5
}

TEST_CASE("infeasible parameters are refused") {
    CHECK_THROWS_AS(gen(1), GenerationError);  // path too short
    CHECK_THROWS_AS(gen(0), GenerationError);
    CHECK_THROWS_AS(gen(2, 0.0), GenerationError);          // k < 1
    CHECK_THROWS_AS(gen(2, 2.0), GenerationError);          // eta < k + 1
    CHECK_THROWS_AS(gen(3, 1.0, 0.0), GenerationError);     // delta out of range
    CHECK_THROWS_AS(gen(3, 1.0, 1.5), GenerationError);
    CHECK_THROWS_AS(gen(3, 1.0, 1.0, 0.0), GenerationError);  // gamma out of range
    CHECK_THROWS_AS(gen(3, 1.0, 1.0, 1.2), GenerationError);
    CHECK_THROWS_AS(gen(3, 1.0, 1.0, 1.0, 0.0), GenerationError);   // y must be positive
    CHECK_THROWS_AS(gen(3, 1.0, 1.0, 1.0, -2.0), GenerationError);
    // Margin condition: 2y must dominate the additive gap at z_eta; a
    // hand-picked y of 1 fails for k = 2, delta = 1/2.
    CHECK_THROWS_AS(gen(4, 2.0, 0.5, 1.0, 1.0), GenerationError);
    CHECK_THROWS_WITH_AS(gen(1), doctest::Contains("eta"), GenerationError);
}

TEST_CASE("separation argument replays exactly at desk scale") {
    for (const std::uint32_t eta : {2u, 3u, 4u}) {
        const LowerBoundInstance inst = gen(eta);
        const ExactTable exact = ExactTable::build(inst.graph, build_spt(inst.graph));
        const SeparationReport rep = check_separation(inst, exact);
        CAPTURE(eta);
        CHECK(rep.ok());
        CHECK(rep.failures.empty());
        // 2*eta fault-free checks plus two checks per (fault, target) pair.
        CHECK(rep.checks == 2ull * eta + 2ull * eta * eta);
    }
}

TEST_CASE("separation holds with a sublinear additive gap (delta < 1)") {
    const LowerBoundInstance inst = gen(5, 2.0, 0.5);
    CHECK(inst.y == std::exp2(43.0));  // derived bound 4*(2n)^8 = 2^42
    for (std::size_t i = 1; i < inst.x.size(); ++i) CHECK(inst.x[i] > inst.x[i - 1]);
    CHECK(2.0 * inst.y > inst.additive_bound(inst.z_eta()));

    const ExactTable exact = ExactTable::build(inst.graph, build_spt(inst.graph));
    const SeparationReport rep = check_separation(inst, exact);
    CHECK(rep.ok());
    CHECK(rep.checks == 2ull * 5 + 2ull * 25);
}

TEST_CASE("every bipartite subset has a distinct post-fault profile") {
    const LowerBoundInstance small = gen(2);
    const DistinguishabilityReport rep2 = check_distinguishability(small);
    CHECK(rep2.subsets == 16);
    CHECK(rep2.pairs == 120);
    CHECK(rep2.ok());

    const DistinguishabilityReport rep3 = check_distinguishability(gen(3));
    CHECK(rep3.subsets == 512);
    CHECK(rep3.pairs == 512ull * 511 / 2);
    CHECK(rep3.ok());

    CHECK_THROWS_AS(check_distinguishability(gen(4)), ContractError);
}

TEST_CASE("fault-free distances form the documented two-level star") {
    const LowerBoundInstance inst = gen(3);
    const auto res = sssp(inst.graph, inst.graph.source());
    for (std::uint32_t i = 0; i <= 3; ++i) CHECK(res.dist[inst.u(i)] == 0.0);
    for (std::uint32_t h = 1; h <= 3; ++h) {
        CHECK(res.dist[inst.t(h)] == inst.y);
        CHECK(res.dist[inst.v(h)] == 2.0 * inst.y);
    }
}
