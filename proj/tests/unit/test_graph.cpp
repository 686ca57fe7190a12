#include <sstream>

#include "corpus.hpp"
#include "doctest.h"
#include "ssdo/errors.hpp"
#include "ssdo/graph.hpp"
#include "ssdo/spt.hpp"

using namespace ssdo;

TEST_CASE("parse reads the header, edges, comments, and blank lines") {
    const Graph g = Graph::parse(
        "# a 4-cycle\n"
        "4 4 0\n"
        "0 1 1\n"
        "1 2 1\n\n"
        "2 3 1\n"
        "3 0 5\n");
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 4);
    CHECK(g.source() == 0);
    CHECK(g.edge(3).w == 5.0);
    CHECK(g.find_edge(0, 3).has_value());
    CHECK(g.find_edge(3, 0) == g.find_edge(0, 3));
    CHECK(!g.find_edge(0, 2).has_value());
}

TEST_CASE("parse rejects malformed input with positions") {
    CHECK_THROWS_AS(Graph::parse("2 1 0\n0 0 1\n"), ValidationError);  // self-loop
    CHECK_THROWS_AS(Graph::parse("3 2 0\n0 1 1\n0 1 2\n"), ValidationError);  // duplicate
    CHECK_THROWS_AS(Graph::parse("2 1 0\n0 1 -3\n"), ValidationError);  // negative weight
    CHECK_THROWS_AS(Graph::parse("2 1 0\n0 5 1\n"), ValidationError);  // endpoint range
    CHECK_THROWS_AS(Graph::parse("2 1 5\n0 1 1\n"), ValidationError);  // source range
    CHECK_THROWS_AS(Graph::parse(""), ParseError);
    CHECK_THROWS_AS(Graph::parse("2 2 0\n0 1 1\n"), ParseError);  // missing edge line
    CHECK_THROWS_AS(Graph::parse("2 1 0\n0 1 1\n9 9 9\n"), ParseError);  // extra line
    CHECK_THROWS_AS(Graph::parse("2 1 0\n0 x 1\n"), ParseError);  // bad token

    try {
        Graph::parse("2 1 0\n0 x 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("parse accepts a stream and a single-vertex graph") {
    std::istringstream in("1 0 0\n");
    const Graph g = Graph::parse(in);
    CHECK(g.num_vertices() == 1);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("sssp on the 4-cycle, with and without a fault") {
    const Graph g = testkit::cycle4();
    const SsspResult base = sssp(g, 0);
    CHECK(base.dist == std::vector<Weight>{0, 1, 2, 3});
    CHECK(base.parent == std::vector<std::int32_t>{-1, 0, 1, 2});

    const SsspResult cut = sssp(g, 0, *g.find_edge(0, 1));
    CHECK(cut.dist == std::vector<Weight>{0, 7, 6, 5});
}

TEST_CASE("sssp on the triangle with the light edge removed") {
    const Graph g = testkit::triangle();
    CHECK(sssp(g, 0).dist == std::vector<Weight>{0, 1, 11});
    CHECK(sssp(g, 0, *g.find_edge(0, 1)).dist == std::vector<Weight>{0, 22, 12});
}

TEST_CASE("excluding the sentinel edge excludes nothing") {
    std::mt19937_64 rng(7);
    const Graph g = testkit::random_biconnected(rng, 24, 12);
    const SsspResult a = sssp(g, g.source());
    const SsspResult b = sssp(g, g.source(), kNoEdge);
    CHECK(a.dist == b.dist);
    CHECK(a.parent == b.parent);
}

TEST_CASE("equal-distance relaxations settle on the smaller parent id") {
    // Both 1 and 2 reach 3 at distance 2; the parent must be 1.
    const Graph g = Graph::parse("4 4 0\n0 1 1\n0 2 1\n1 3 1\n2 3 1\n");
    const SsspResult r = sssp(g, 0);
    CHECK(r.dist[3] == 2.0);
    CHECK(r.parent[3] == 1);
}

TEST_CASE("sssp matches edge-relaxation distances on random graphs") {
    std::mt19937_64 rng(1234);
    for (int it = 0; it < 60; ++it) {
        const VertexId n = 4 + static_cast<VertexId>(rng() % 61);
        const Graph g = testkit::random_connected(rng, n, static_cast<EdgeId>(rng() % (2 * n)));
        const EdgeId excluded =
            (it % 3 == 0) ? kNoEdge : static_cast<EdgeId>(rng() % g.num_edges());
        const SsspResult got = sssp(g, g.source(), excluded);
        const auto want = testkit::bellman_ford(g, g.source(), excluded);
        for (VertexId v = 0; v < n; ++v) CHECK(got.dist[v] == want[v]);
    }
}

TEST_CASE("sssp is deterministic") {
    std::mt19937_64 rng(99);
    const Graph g = testkit::random_biconnected(rng, 48, 70);
    const SsspResult a = sssp(g, g.source());
    const SsspResult b = sssp(g, g.source());
    CHECK(a.parent == b.parent);
    CHECK(a.parent_edge == b.parent_edge);
}

TEST_CASE("fingerprint ignores edge order and tracks weights") {
    const Graph a = Graph::parse("3 2 0\n0 1 1\n1 2 2\n");
    const Graph b = Graph::parse("3 2 0\n1 2 2\n0 1 1\n");
    const Graph c = Graph::parse("3 2 0\n0 1 1\n1 2 2.5\n");
    CHECK(fingerprint_of(a) == fingerprint_of(b));
    CHECK(fingerprint_of(a).checksum != fingerprint_of(c).checksum);
}

TEST_CASE("fault coverage: cycles are covered, paths are not") {
    const Graph cyc = testkit::cycle4();
    const auto cyc_spt = build_spt(cyc);
    CHECK(validate_fault_coverage(cyc, *cyc_spt).empty());

    const Graph tri = testkit::triangle();
    const auto tri_spt = build_spt(tri);
    CHECK(validate_fault_coverage(tri, *tri_spt).empty());

    const Graph path = Graph::parse("3 2 0\n0 1 1\n1 2 1\n");
    const auto path_spt = build_spt(path);
    CHECK(validate_fault_coverage(path, *path_spt).size() == 2);
}

TEST_CASE("neighbors span matches the edge list") {
    const Graph g = testkit::cycle4();
    auto nb = g.neighbors(0);
    CHECK(nb.size() == 2);
    std::uint64_t seen = 0;
    for (const HalfEdge& h : nb) seen |= 1ull << h.to;
    CHECK(seen == ((1ull << 1) | (1ull << 3)));
}
