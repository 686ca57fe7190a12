#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "ssdo/container.hpp"
#include "ssdo/errors.hpp"
#include "ssdo/oracle2.hpp"
#include "ssdo/oracle_eps.hpp"

using namespace ssdo;

namespace {

template <typename OracleT>
std::string dump(const OracleT& o) {
    std::ostringstream out(std::ios::binary);
    const std::uint64_t bytes = save_oracle(o, out);
    std::string s = out.str();
    REQUIRE(bytes == s.size());
    return s;
}

AnyOracle reload(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    return load_oracle(in);
}

void expect_reject(const std::string& bytes, const std::string& needle) {
    std::istringstream in(bytes, std::ios::binary);
    try {
        load_oracle(in);
        FAIL("container was accepted; expected rejection mentioning '" << needle << "'");
    } catch (const ContainerError& e) {
        CAPTURE(needle);
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

// Little-endian patching helpers, independent of host byte order.
void patch_u32(std::string& b, std::size_t at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b[at + i] = static_cast<char>((v >> (8 * i)) & 0xff);
}
void patch_u64(std::string& b, std::size_t at, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b[at + i] = static_cast<char>((v >> (8 * i)) & 0xff);
}
std::uint32_t peek_u32(const std::string& b, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i] & 0xff) << (8 * i);
    return v;
}
std::uint64_t peek_u64(const std::string& b, std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + i] & 0xff) << (8 * i);
    return v;
}

struct Frame {
    std::uint32_t id;
    std::size_t payload;  // offset of the payload within the file
    std::uint64_t len;
};

std::vector<Frame> frames_of(const std::string& bytes) {
    std::vector<Frame> frames;
    std::size_t at = 8;  // past the fixed header
    while (at < bytes.size()) {
        REQUIRE(at + 12 <= bytes.size());
        const std::uint32_t id = peek_u32(bytes, at);
        const std::uint64_t len = peek_u64(bytes, at + 4);
        frames.push_back({id, at + 12, len});
        at += 12 + len;
    }
    REQUIRE(at == bytes.size());
    return frames;
}

const Frame& frame(const std::vector<Frame>& frames, std::uint32_t id) {
    for (const auto& f : frames)
        if (f.id == id) return f;
    FAIL("no section with id " << id);
    static Frame dummy{};
    return dummy;
}

Oracle2 build_two(std::mt19937_64& rng, VertexId n) {
    const Graph g = testkit::random_biconnected(rng, n, n / 2 + 2);
    return Oracle2::build(g, build_spt(g));
}

}  // namespace

TEST_CASE("two-stretch oracle round-trips bit for bit") {
    std::mt19937_64 rng(11);
    const Graph g = testkit::random_biconnected(rng, 40, 24);
    const Oracle2 o = Oracle2::build(g, build_spt(g));
    const std::string bytes = dump(o);

    const AnyOracle any = reload(bytes);
    REQUIRE(std::holds_alternative<Oracle2>(any));
    const Oracle2& r = std::get<Oracle2>(any);

    CHECK(r.fingerprint() == o.fingerprint());
    CHECK(oracle_fingerprint(any) == o.fingerprint());
    CHECK(r.mark_events() == o.mark_events());
    CHECK(r.marked_count() == o.marked_count());
    for (VertexId v = 0; v < 40; ++v) CHECK(r.label(v) == o.label(v));
    for (std::uint32_t k = 1; k < 40; ++k) {
        const Weight a = o.detour(EdgeRank{k});
        const Weight b = r.detour(EdgeRank{k});
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }

    std::mt19937_64 qrng(12);
    for (int q = 0; q < 400; ++q) {
        const Edge& e = g.edge(static_cast<EdgeId>(qrng() % g.num_edges()));
        const VertexId t = static_cast<VertexId>(qrng() % g.num_vertices());
        const Answer2 x = o.query(e.u, e.v, t);
        const Answer2 y = r.query(e.u, e.v, t);
        CHECK(std::memcmp(&x.value, &y.value, sizeof x.value) == 0);
        CHECK(x.kind == y.kind);
    }

    require_fingerprint(any, g);  // must not throw
}

TEST_CASE("epsilon oracle round-trips bit for bit") {
    std::mt19937_64 rng(13);
    const Graph g = testkit::random_biconnected(rng, 36, 20);
    const OracleEps o = OracleEps::build(g, build_spt(g), 0.25);
    const std::string bytes = dump(o);

    const AnyOracle any = reload(bytes);
    REQUIRE(std::holds_alternative<OracleEps>(any));
    const OracleEps& r = std::get<OracleEps>(any);

    CHECK(r.epsilon() == o.epsilon());
    CHECK(r.bucket_count() == o.bucket_count());
    CHECK(r.fingerprint() == o.fingerprint());
    CHECK(r.stats().type1_entries == o.stats().type1_entries);
    CHECK(r.stats().max_entries_per_vertex == o.stats().max_entries_per_vertex);
    REQUIRE(r.entries().size() == o.entries().size());
    for (std::size_t i = 0; i < o.entries().size(); ++i) {
        CHECK(r.entries()[i].vertex == o.entries()[i].vertex);
        CHECK(r.entries()[i].fault == o.entries()[i].fault);
        CHECK(r.entries()[i].bucket == o.entries()[i].bucket);
        const Weight a = o.entries()[i].value;
        const Weight b = r.entries()[i].value;
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }

    std::mt19937_64 qrng(14);
    for (int q = 0; q < 400; ++q) {
        const Edge& e = g.edge(static_cast<EdgeId>(qrng() % g.num_edges()));
        const VertexId t = static_cast<VertexId>(qrng() % g.num_vertices());
        const AnswerEps x = o.query(e.u, e.v, t);
        const AnswerEps y = r.query(e.u, e.v, t);
        CHECK(std::memcmp(&x.value, &y.value, sizeof x.value) == 0);
        CHECK(x.kind == y.kind);
        CHECK(x.bucket == y.bucket);
    }
}

TEST_CASE("file round-trip reports the on-disk byte count") {
    std::mt19937_64 rng(15);
    const Graph g = testkit::random_biconnected(rng, 24, 12);
    const OracleEps o = OracleEps::build(g, build_spt(g), 0.5);

    const std::string path =
        (std::filesystem::temp_directory_path() / "ssdo_container_test.oracle").string();
    const std::uint64_t bytes = save_oracle_file(o, path);
    CHECK(bytes == std::filesystem::file_size(path));

    const AnyOracle any = load_oracle_file(path);
    REQUIRE(std::holds_alternative<OracleEps>(any));
    CHECK(std::get<OracleEps>(any).fingerprint() == o.fingerprint());
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_oracle_file(path), ContainerError);  // gone now
}

TEST_CASE("header corruption is refused") {
    std::mt19937_64 rng(16);
    const std::string good = dump(build_two(rng, 16));

    std::string bad = good;
    patch_u32(bad, 0, 0xDEADBEEFu);
    expect_reject(bad, "not an oracle container");

    bad = good;
    bad[4] = 9;  // version
    expect_reject(bad, "version");

    bad = good;
    bad[5] = 7;  // kind
    expect_reject(bad, "kind");

    bad = good;
    bad[6] = 1;  // reserved bytes must stay zero
    expect_reject(bad, "corrupt header");

    expect_reject(std::string(), "truncated header");
    expect_reject(good.substr(0, 5), "truncated header");
}

TEST_CASE("section framing corruption is refused") {
    std::mt19937_64 rng(17);
    const std::string good = dump(build_two(rng, 16));
    const auto frames = frames_of(good);

    SUBCASE("truncated mid-section") {
        expect_reject(good.substr(0, good.size() - 3), "truncated");
    }
    SUBCASE("truncated mid-frame-header") {
        expect_reject(good.substr(0, frames.back().payload - 5), "truncated");
    }
    SUBCASE("duplicate section") {
        const Frame& fp = frame(frames, 1);
        std::string bad = good + good.substr(fp.payload - 12, 12 + fp.len);
        expect_reject(bad, "duplicate");
    }
    SUBCASE("unknown section id") {
        std::string tail(12, '\0');
        patch_u32(tail, 0, 99);
        patch_u64(tail, 4, 0);
        expect_reject(good + tail, "unknown section");
    }
    SUBCASE("missing section") {
        const Frame& labels = frame(frames, 5);
        std::string bad = good.substr(0, labels.payload - 12) +
                          good.substr(labels.payload + labels.len);
        expect_reject(bad, "missing labels");
    }
    SUBCASE("oversized section length claim") {
        std::string bad = good;
        const Frame& labels = frame(frames, 5);
        patch_u64(bad, labels.payload - 8, labels.len + 50);
        expect_reject(bad, "truncated");
    }
}

TEST_CASE("payload validation catches semantic corruption") {
    std::mt19937_64 rng(18);
    const Graph g = testkit::random_biconnected(rng, 16, 8);
    const Oracle2 o = Oracle2::build(g, build_spt(g));
    const std::string good = dump(o);
    const auto frames = frames_of(good);
    const VertexId n = 16;

    SUBCASE("detour count disagrees with the vertex count") {
        std::string bad = good;
        patch_u64(bad, frame(frames, 4).payload, n);  // must be n-1
        expect_reject(bad, "detour");
    }
    SUBCASE("edge keys out of order") {
        std::string bad = good;
        const Frame& keys = frame(frames, 3);
        const std::uint64_t k0 = peek_u64(bad, keys.payload + 8);
        const std::uint64_t k1 = peek_u64(bad, keys.payload + 16);
        patch_u64(bad, keys.payload + 8, k1);
        patch_u64(bad, keys.payload + 16, k0);
        expect_reject(bad, "ascending");
    }
    SUBCASE("label rank outside the tree") {
        std::string bad = good;
        patch_u32(bad, frame(frames, 5).payload + 16, n + 5);
        expect_reject(bad, "label");
    }
    SUBCASE("zero label rank") {
        std::string bad = good;
        patch_u32(bad, frame(frames, 5).payload + 16, 0);
        expect_reject(bad, "label");
    }
    SUBCASE("preorder array disagrees with the reassembled tree") {
        std::string bad = good;
        const Frame& tree = frame(frames, 2);
        // Layout: n u32, source u32, parent i32*n, dist f64*n, preorder u32*n.
        const std::size_t pre = tree.payload + 8 + 4ull * n + 8ull * n;
        const std::uint32_t p0 = peek_u32(bad, pre);
        const std::uint32_t p1 = peek_u32(bad, pre + 4);
        patch_u32(bad, pre, p1);
        patch_u32(bad, pre + 4, p0);
        expect_reject(bad, "preorder");
    }
    SUBCASE("broken parent array") {
        std::string bad = good;
        const Frame& tree = frame(frames, 2);
        // Point a non-root vertex at itself: reassembly must fail.
        const VertexId victim = g.source() == 3 ? 4u : 3u;
        patch_u32(bad, tree.payload + 8 + 4ull * victim, victim);
        expect_reject(bad, "tree");
    }
}

TEST_CASE("epsilon payload corruption is refused") {
    std::mt19937_64 rng(19);
    const Graph g = testkit::random_biconnected(rng, 16, 8);
    const OracleEps o = OracleEps::build(g, build_spt(g), 0.5);
    REQUIRE(!o.entries().empty());
    const std::string good = dump(o);
    const auto frames = frames_of(good);

    SUBCASE("epsilon outside (0,1)") {
        std::string bad = good;
        const double wild = 1.5;
        std::uint64_t bits;
        std::memcpy(&bits, &wild, sizeof bits);
        patch_u64(bad, frame(frames, 6).payload, bits);
        expect_reject(bad, "epsilon");
    }
    SUBCASE("bucket count disagrees with epsilon") {
        std::string bad = good;
        patch_u32(bad, frame(frames, 6).payload + 8, o.bucket_count() + 1);
        expect_reject(bad, "bucket");
    }
    SUBCASE("entry bucket out of range") {
        std::string bad = good;
        patch_u32(bad, frame(frames, 7).payload + 8 + 8, o.bucket_count());
        expect_reject(bad, "entr");
    }
    SUBCASE("entry vertex out of range") {
        std::string bad = good;
        patch_u32(bad, frame(frames, 7).payload + 8, 16);
        expect_reject(bad, "entr");
    }
}

TEST_CASE("sections load in any order") {
    std::mt19937_64 rng(20);
    const Graph g = testkit::random_biconnected(rng, 20, 10);
    const Oracle2 o = Oracle2::build(g, build_spt(g));
    const std::string good = dump(o);
    const auto frames = frames_of(good);

    std::string shuffled = good.substr(0, 8);
    for (auto it = frames.rbegin(); it != frames.rend(); ++it)
        shuffled += good.substr(it->payload - 12, 12 + it->len);

    const AnyOracle any = reload(shuffled);
    REQUIRE(std::holds_alternative<Oracle2>(any));
    const Oracle2& r = std::get<Oracle2>(any);
    CHECK(r.fingerprint() == o.fingerprint());
    for (VertexId v = 0; v < 20; ++v) CHECK(r.label(v) == o.label(v));
}

TEST_CASE("fingerprint guard names both sides of a mismatch") {
    std::mt19937_64 rng(21);
    const Graph g = testkit::random_biconnected(rng, 12, 6);
    const Oracle2 o = Oracle2::build(g, build_spt(g));
    const AnyOracle any = reload(dump(o));

    // Same shape, one weight nudged: the checksum must catch it.
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    edges[0].w += 0.5;
    const Graph other = Graph::from_edges(g.num_vertices(), g.source(), std::move(edges));
    try {
        require_fingerprint(any, other);
        FAIL("mismatched graph was accepted");
    } catch (const ContainerError& e) {
        const std::string what = e.what();
        CHECK(what.find("does not match") != std::string::npos);
        CHECK(what.find("n=") != std::string::npos);
    }
}
