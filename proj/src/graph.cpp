#include "ssdo/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <sstream>
#include <string>
#include <queue>

#include "ssdo/errors.hpp"
#include "ssdo/spt.hpp"

namespace ssdo {

namespace {

std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::string edge_text(VertexId u, VertexId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph Graph::from_edges(VertexId n, VertexId source, std::vector<Edge> edges) {
    if (n == 0) throw ValidationError("graph needs at least one vertex");
    if (source >= n) throw ValidationError("source id " + std::to_string(source) + " out of range");

    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n)
            throw ValidationError("edge " + edge_text(e.u, e.v) + " has an out-of-range endpoint");
        if (e.u == e.v)
            throw ValidationError("self-loop at vertex " + std::to_string(e.u));
        if (!(e.w >= 0.0) || !std::isfinite(e.w))
            throw ValidationError("edge " + edge_text(e.u, e.v) + " has a negative or non-finite weight");
    }

    std::vector<std::uint64_t> keys(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) keys[i] = pair_key(edges[i].u, edges[i].v);
    std::vector<std::uint64_t> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        VertexId u = static_cast<VertexId>(*dup >> 32);
        VertexId v = static_cast<VertexId>(*dup & 0xffffffffu);
        throw ValidationError("duplicate edge " + edge_text(u, v));
    }

    Graph g;
    g.n_ = n;
    g.source_ = source;
    g.edges_ = std::move(edges);

    g.adj_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Edge& e : g.edges_) {
        ++g.adj_offsets_[e.u + 1];
        ++g.adj_offsets_[e.v + 1];
    }
    for (VertexId v = 0; v < n; ++v) g.adj_offsets_[v + 1] += g.adj_offsets_[v];
    g.adj_.resize(2 * g.edges_.size());
    std::vector<std::uint32_t> cursor(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
        const Edge& e = g.edges_[id];
        g.adj_[cursor[e.u]++] = {e.v, id};
        g.adj_[cursor[e.v]++] = {e.u, id};
    }
    return g;
}

namespace {

struct Token {
    std::string_view text;
    int column;  // 1-based
};

// Splits one line into whitespace-separated tokens, tracking columns.
std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

std::uint64_t parse_uint(const Token& tok, int line_no, const char* what) {
    std::uint64_t value = 0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(std::string("expected ") + what + ", got '" + std::string(tok.text) + "'",
                         line_no, tok.column);
    return value;
}

Weight parse_weight(const Token& tok, int line_no) {
    Weight value = 0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("expected a weight, got '" + std::string(tok.text) + "'",
                         line_no, tok.column);
    return value;
}

}  // namespace

Graph Graph::parse(std::istream& in) {
    std::string line;
    int line_no = 0;

    bool have_header = false;
    std::uint64_t n = 0, m = 0, s = 0;
    int header_line = 0;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<Token> toks = tokenize(line);
        if (toks.empty() || toks.front().text.front() == '#') continue;

        if (!have_header) {
            if (toks.size() != 3)
                throw ParseError("header must be 'n m s'", line_no,
                                 toks.size() > 3 ? toks[3].column : toks[0].column);
            n = parse_uint(toks[0], line_no, "a vertex count");
            m = parse_uint(toks[1], line_no, "an edge count");
            s = parse_uint(toks[2], line_no, "a source id");
            header_line = line_no;
            have_header = true;
            continue;
        }

        if (edges.size() == m)
            throw ParseError("unexpected extra edge line (header declared " + std::to_string(m) + " edges)",
                             line_no, toks[0].column);
        if (toks.size() != 3)
            throw ParseError("edge line must be 'u v w'", line_no,
                             toks.size() > 3 ? toks[3].column : toks[0].column);
        std::uint64_t u = parse_uint(toks[0], line_no, "a vertex id");
        std::uint64_t v = parse_uint(toks[1], line_no, "a vertex id");
        if (u >= n)
            throw ValidationError("line " + std::to_string(line_no) + ": vertex id " +
                                  std::to_string(u) + " out of range (n=" + std::to_string(n) + ")");
        if (v >= n)
            throw ValidationError("line " + std::to_string(line_no) + ": vertex id " +
                                  std::to_string(v) + " out of range (n=" + std::to_string(n) + ")");
        Weight w = parse_weight(toks[2], line_no);
        if (!(w >= 0.0) || !std::isfinite(w))
            throw ValidationError("line " + std::to_string(line_no) + ": weight must be non-negative and finite");
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
    }

    if (!have_header) throw ParseError("empty input: missing 'n m s' header", line_no, 0);
    if (edges.size() != m)
        throw ParseError("header declared " + std::to_string(m) + " edges but only " +
                         std::to_string(edges.size()) + " found", header_line, 0);
    if (n > std::numeric_limits<VertexId>::max() - 1)
        throw ValidationError("vertex count too large");
    if (s >= n) throw ValidationError("source id " + std::to_string(s) + " out of range");

    return from_edges(static_cast<VertexId>(n), static_cast<VertexId>(s), std::move(edges));
}

Graph Graph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
    if (u >= n_ || v >= n_) return std::nullopt;
    for (const HalfEdge& he : neighbors(u))
        if (he.to == v) return he.edge;
    return std::nullopt;
}

std::uint64_t Graph::weight_checksum() const {
    struct Triple {
        std::uint64_t key;
        std::uint64_t wbits;
    };
    std::vector<Triple> triples(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i)
        triples[i] = {pair_key(edges_[i].u, edges_[i].v), std::bit_cast<std::uint64_t>(edges_[i].w)};
    std::sort(triples.begin(), triples.end(),
              [](const Triple& a, const Triple& b) { return a.key < b.key; });

    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    auto mix = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(n_);
    mix(source_);
    for (const Triple& t : triples) {
        mix(t.key);
        mix(t.wbits);
    }
    return h;
}

Fingerprint fingerprint_of(const Graph& g) {
    return {g.num_vertices(), g.num_edges(), g.source(), g.weight_checksum()};
}

std::vector<std::uint64_t> edge_keys(const Graph& g) {
    std::vector<std::uint64_t> keys(g.num_edges());
    for (EdgeId id = 0; id < g.num_edges(); ++id)
        keys[id] = pair_key(g.edge(id).u, g.edge(id).v);
    std::sort(keys.begin(), keys.end());
    return keys;
}

SsspResult sssp(const Graph& g, VertexId root, EdgeId excluded) {
    const VertexId n = g.num_vertices();
    if (root >= n) throw ContractError("sssp root out of range");

    SsspResult r;
    r.dist.assign(n, kUnreachable);
    r.parent.assign(n, -1);
    r.parent_edge.assign(n, -1);
    std::vector<char> settled(n, 0);

    using Item = std::pair<Weight, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    r.dist[root] = 0.0;
    heap.push({0.0, root});

    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (settled[x]) continue;
        settled[x] = 1;
        for (const HalfEdge& he : g.neighbors(x)) {
            if (he.edge == excluded) continue;
            const VertexId y = he.to;
            if (settled[y]) continue;
            const Weight cand = d + g.edge(he.edge).w;
            if (cand < r.dist[y]) {
                r.dist[y] = cand;
                r.parent[y] = static_cast<std::int32_t>(x);
                r.parent_edge[y] = static_cast<std::int32_t>(he.edge);
                heap.push({cand, y});
            } else if (cand == r.dist[y] && r.parent[y] >= 0 &&
                       static_cast<std::int32_t>(x) < r.parent[y]) {
                r.parent[y] = static_cast<std::int32_t>(x);
                r.parent_edge[y] = static_cast<std::int32_t>(he.edge);
            }
        }
    }
    return r;
}

std::vector<EdgeId> validate_fault_coverage(const Graph& g, const Spt& spt) {
    const VertexId n = g.num_vertices();
    // Iterative bridge finding (lowpoint DFS over the whole graph).
    std::vector<std::uint32_t> num(n, 0), low(n, 0);
    std::vector<EdgeId> via(n, kNoEdge);  // edge used to enter the vertex
    std::vector<std::uint32_t> it(n, 0);
    std::vector<EdgeId> bridges;
    std::uint32_t timer = 1;

    std::vector<VertexId> stack;
    for (VertexId start = 0; start < n; ++start) {
        if (num[start] != 0) continue;
        num[start] = low[start] = timer++;
        stack.push_back(start);
        while (!stack.empty()) {
            VertexId x = stack.back();
            auto nbrs = g.neighbors(x);
            if (it[x] < nbrs.size()) {
                const HalfEdge he = nbrs[it[x]++];
                if (he.edge == via[x]) continue;
                if (num[he.to] == 0) {
                    num[he.to] = low[he.to] = timer++;
                    via[he.to] = he.edge;
                    stack.push_back(he.to);
                } else {
                    low[x] = std::min(low[x], num[he.to]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    VertexId p = stack.back();
                    low[p] = std::min(low[p], low[x]);
                    if (low[x] > num[p]) bridges.push_back(via[x]);
                }
            }
        }
    }

    // Every bridge belongs to every spanning tree, the shortest-path tree
    // included; keep the check explicit rather than assumed.
    std::vector<EdgeId> out;
    for (EdgeId e : bridges) {
        if (spt.tree_edge_rank(g.edge(e).u, g.edge(e).v).has_value()) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ssdo
