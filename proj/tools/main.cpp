#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "ssdo/container.hpp"
#include "ssdo/errors.hpp"
#include "ssdo/exact.hpp"
#include "ssdo/graph.hpp"
#include "ssdo/lower_bound.hpp"
#include "ssdo/oracle2.hpp"
#include "ssdo/oracle_eps.hpp"
#include "ssdo/spt.hpp"

// Exit codes: 0 success, 1 usage, 2 invalid input or parameters,
// 3 verification failure. Reports go to stdout, diagnostics to stderr.

namespace {

using namespace ssdo;

// Wrong invocation rather than bad data; maps to exit 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StretchSpec {
    bool two = true;
    double epsilon = 0.0;
};

StretchSpec parse_stretch(const std::string& s) {
    if (s == "2") return {};
    if (s.rfind("eps:", 0) == 0) {
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(s.substr(4), &used);
            if (used != s.size() - 4) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UsageError("epsilon must be in (0,1)");
        }
        if (!(v > 0.0) || !(v < 1.0)) throw UsageError("epsilon must be in (0,1)");
        return {false, v};
    }
    throw UsageError("stretch must be \"2\" or \"eps:<value>\"");
}

std::string fmt_value(double v) {
    if (std::isinf(v)) return "UNREACHABLE";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return Graph::parse(in);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

Weight answer_value(const AnyOracle& o, VertexId u, VertexId v, VertexId t) {
    return std::visit([&](const auto& x) { return x.query(u, v, t).value; }, o);
}

// ---- build ----

int cmd_build(const std::string& graph_path, const std::string& stretch,
              const std::string& out_path, bool strict) {
    const StretchSpec spec = parse_stretch(stretch);
    const Graph g = load_graph(graph_path);
    std::printf("n = %u, m = %u, source = %u\n", g.num_vertices(), g.num_edges(), g.source());

    const auto t0 = std::chrono::steady_clock::now();
    SptPtr spt = build_spt(g);
    if (spec.two) {
        Oracle2 o = Oracle2::build(g, spt, strict);
        const double dt = seconds_since(t0);
        const std::uint64_t bytes = save_oracle_file(o, out_path);
        std::printf("kind: two-stretch\n");
        std::printf("|S'| = %u (detours)\n", o.detour_count());
        std::printf("labels = %u (marked %llu)\n", o.label_count(),
                    static_cast<unsigned long long>(o.marked_count()));
        std::printf("stored values: %llu\n",
                    static_cast<unsigned long long>(o.detour_count()) + o.label_count());
        std::printf("build time: %.3f s\n", dt);
        std::printf("container bytes: %llu\n", static_cast<unsigned long long>(bytes));
        std::printf("wrote %s\n", out_path.c_str());
        return 0;
    }

    OracleEps o = OracleEps::build(g, spt, spec.epsilon, strict);
    const double dt = seconds_since(t0);
    const std::uint64_t bytes = save_oracle_file(o, out_path);
    std::printf("kind: (1+eps)-stretch\n");
    std::printf("epsilon = %g\n", o.epsilon());
    std::printf("k = %u (buckets %u)\n", o.bucket_count() - 1, o.bucket_count());
    std::printf("|S'| = %u (detours)\n", o.detour_count());
    std::printf("|S| = %zu (entries)\n", o.entries().size());
    std::string sizes;
    for (std::uint32_t i = 0; i < o.bucket_count(); ++i) {
        if (o.bucket_size(i) == 0) continue;
        if (!sizes.empty()) sizes += ' ';
        sizes += std::to_string(i) + ":" + std::to_string(o.bucket_size(i));
    }
    std::printf("bucket sizes: %s\n", sizes.empty() ? "none" : sizes.c_str());
    std::printf("max entries per vertex: %u (cap %u)\n", o.stats().max_entries_per_vertex,
                o.bucket_count());
    std::printf("stored values: %llu (budget %llu)\n",
                static_cast<unsigned long long>(o.detour_count()) + o.entries().size(),
                static_cast<unsigned long long>(o.detour_count()) +
                    static_cast<unsigned long long>(g.num_vertices()) * o.bucket_count());
    std::printf("build time: %.3f s\n", dt);
    std::printf("container bytes: %llu\n", static_cast<unsigned long long>(bytes));
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

// ---- query ----

int cmd_query(const std::string& oracle_path, const std::vector<std::uint32_t>& fail,
              std::uint32_t target) {
    const AnyOracle o = load_oracle_file(oracle_path);
    if (const auto* two = std::get_if<Oracle2>(&o)) {
        const Answer2 a = two->query(fail[0], fail[1], target);
        std::printf("%s %s\n", fmt_value(a.value).c_str(), to_string(a.kind).c_str());
    } else {
        const auto& eps = std::get<OracleEps>(o);
        const AnswerEps a = eps.query(fail[0], fail[1], target);
        std::string tag = to_string(a.kind);
        if (a.kind == AnswerEpsCase::kBucketCandidate)
            tag += "(" + std::to_string(a.bucket) + ")";
        std::printf("%s %s\n", fmt_value(a.value).c_str(), tag.c_str());
    }
    return 0;
}

// ---- verify ----

int cmd_verify(const std::string& graph_path, const std::string& stretch,
               const std::string& oracle_path, std::uint64_t samples, std::uint64_t seed) {
    if (stretch.empty() == oracle_path.empty())
        throw UsageError("pass exactly one of --stretch or --oracle");

    const Graph g = load_graph(graph_path);
    if (g.num_vertices() > 4096)
        throw ValidationError("refusing exact verification beyond n = 4096 (n = " +
                              std::to_string(g.num_vertices()) + ")");

    AnyOracle oracle = [&]() -> AnyOracle {
        if (!oracle_path.empty()) {
            AnyOracle o = load_oracle_file(oracle_path);
            require_fingerprint(o, g);
            return o;
        }
        const StretchSpec spec = parse_stretch(stretch);
        SptPtr spt = build_spt(g);
        if (spec.two) return Oracle2::build(g, spt, false);
        return OracleEps::build(g, spt, spec.epsilon, false);
    }();

    const bool two = std::holds_alternative<Oracle2>(oracle);
    const double alpha = two ? 2.0 : 1.0 + std::get<OracleEps>(oracle).epsilon();
    std::printf("oracle: %s (alpha = %.17g)\n", two ? "two-stretch" : "(1+eps)-stretch", alpha);

    // Exact side: rebuilt tree; queries address faults by endpoints, so a
    // container holding a different tree still gets checked fairly.
    SptPtr exact_spt = build_spt(g);
    const ExactTable table = ExactTable::build(g, exact_spt);

    const VertexId n = g.num_vertices();
    std::uint64_t checks = 0, violations = 0;
    double max_stretch = 1.0;
    auto check_one = [&](std::uint32_t rank, VertexId t) {
        const VertexId x = exact_spt->rank_vertex(EdgeRank{rank});
        const VertexId p = static_cast<VertexId>(exact_spt->parent(x));
        const Weight exact = table.query(EdgeRank{rank}, t);
        const Weight value = answer_value(oracle, p, x, t);
        ++checks;
        if (exact > 0.0 && std::isfinite(exact) && std::isfinite(value))
            max_stretch = std::max(max_stretch, value / exact);
        const bool low = value < exact * (1.0 - 1e-12);
        const bool high = std::isfinite(exact) ? !(value <= alpha * exact * (1.0 + 1e-9))
                                               : std::isfinite(value);
        if (low || high) {
            ++violations;
            if (violations <= 10)
                std::printf("VIOLATION fail=(%u,%u) t=%u value=%s exact=%s\n", p, x, t,
                            fmt_value(value).c_str(), fmt_value(exact).c_str());
        }
    };

    if (samples == 0) {
        for (std::uint32_t r = 1; r < n; ++r)
            for (VertexId t = 0; t < n; ++t) check_one(r, t);
    } else {
        std::mt19937_64 rng(seed);
        for (std::uint64_t i = 0; i < samples; ++i) {
            const std::uint32_t r = 1 + static_cast<std::uint32_t>(rng() % (n - 1));
            const VertexId t = static_cast<VertexId>(rng() % n);
            check_one(r, t);
        }
    }

    std::printf("checks: %llu\n", static_cast<unsigned long long>(checks));
    std::printf("max stretch: %.12g\n", max_stretch);
    std::printf("violations: %llu\n", static_cast<unsigned long long>(violations));
    return violations == 0 ? 0 : 3;
}

// ---- bench ----

int cmd_bench(const std::string& graph_path, const std::string& stretch, std::uint64_t queries,
              std::uint64_t seed) {
    const StretchSpec spec = parse_stretch(stretch);
    const Graph g = load_graph(graph_path);
    const VertexId n = g.num_vertices();

    const auto t0 = std::chrono::steady_clock::now();
    SptPtr spt = build_spt(g);
    AnyOracle oracle = spec.two ? AnyOracle(Oracle2::build(g, spt, false))
                                : AnyOracle(OracleEps::build(g, spt, spec.epsilon, false));
    const double dt = seconds_since(t0);
    std::printf("build time: %.3f s\n", dt);

    std::ostringstream sink(std::ios::binary);
    const std::uint64_t bytes = std::visit([&](const auto& o) { return save_oracle(o, sink); },
                                           oracle);
    std::printf("container bytes: %llu\n", static_cast<unsigned long long>(bytes));

    std::uint64_t stored = 0, budget = 0;
    if (const auto* two = std::get_if<Oracle2>(&oracle)) {
        stored = static_cast<std::uint64_t>(two->detour_count()) + two->label_count();
        budget = stored;
    } else {
        const auto& eps = std::get<OracleEps>(oracle);
        stored = eps.detour_count() + eps.entries().size();
        budget = eps.detour_count() + static_cast<std::uint64_t>(n) * eps.bucket_count();
    }
    std::printf("stored values: %llu (budget %llu)\n", static_cast<unsigned long long>(stored),
                static_cast<unsigned long long>(budget));
    std::printf("queries: %llu\n", static_cast<unsigned long long>(queries));
    if (queries == 0) return 0;

    std::mt19937_64 rng(seed);
    struct Q {
        VertexId u, v, t;
    };
    std::vector<Q> workload(queries);
    for (auto& q : workload) {
        const Edge& e = g.edge(static_cast<EdgeId>(rng() % g.num_edges()));
        q = {e.u, e.v, static_cast<VertexId>(rng() % n)};
    }

    std::vector<double> lat_ns(queries);
    std::uint64_t checksum = 14695981039346656037ull;
    for (std::uint64_t i = 0; i < queries; ++i) {
        const Q& q = workload[i];
        const auto s = std::chrono::steady_clock::now();
        const Weight val = answer_value(oracle, q.u, q.v, q.t);
        lat_ns[i] = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - s)
                        .count();
        checksum = fnv_mix(checksum, q.u);
        checksum = fnv_mix(checksum, q.v);
        checksum = fnv_mix(checksum, q.t);
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof val);
        std::memcpy(&bits, &val, sizeof bits);
        checksum = fnv_mix(checksum, bits);
    }
    std::printf("workload checksum: 0x%016llx\n", static_cast<unsigned long long>(checksum));

    std::sort(lat_ns.begin(), lat_ns.end());
    auto pct = [&](double p) { return lat_ns[static_cast<std::size_t>(p * (queries - 1))] / 1e3; };
    std::printf("latency p50: %.3f us, p90: %.3f us, p99: %.3f us\n", pct(0.50), pct(0.90),
                pct(0.99));
    return 0;
}

// ---- gen-lb ----

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GenerationError("cannot open " + path + " for writing");
    out << g.num_vertices() << ' ' << g.num_edges() << ' ' << g.source() << '\n';
    for (const Edge& e : g.edges()) {
        char w[64];
        std::snprintf(w, sizeof w, "%.17g", e.w);
        out << e.u << ' ' << e.v << ' ' << w << '\n';
    }
    if (!out.flush()) throw GenerationError("write to " + path + " failed");
}

int cmd_gen_lb(std::uint32_t eta, double k, double delta, double gamma, double y, bool have_y,
               const std::string& out_path, bool enumerate) {
    LowerBoundParams params;
    params.eta = eta;
    params.k = k;
    params.delta = delta;
    params.gamma = gamma;
    if (have_y) params.y = y;

    const LowerBoundInstance inst = gen_lower_bound(params);
    const Graph& g = inst.graph;
    std::printf("eta = %u, k = %.17g, delta = %.17g, gamma = %.17g, y = %.17g\n", inst.eta, inst.k,
                inst.delta, inst.gamma, inst.y);
    std::printf("n = %u, m = %u, source = %u\n", g.num_vertices(), g.num_edges(), g.source());
    std::printf("z_eta = %.17g\n", inst.z_eta());

    write_graph_file(g, out_path);
    const std::string meta_path = out_path + ".meta";
    {
        std::ofstream meta(meta_path);
        if (!meta) throw GenerationError("cannot open " + meta_path + " for writing");
        char buf[64];
        meta << "eta=" << inst.eta << '\n';
        std::snprintf(buf, sizeof buf, "%.17g", inst.k);
        meta << "k=" << buf << '\n';
        std::snprintf(buf, sizeof buf, "%.17g", inst.delta);
        meta << "delta=" << buf << '\n';
        std::snprintf(buf, sizeof buf, "%.17g", inst.gamma);
        meta << "gamma=" << buf << '\n';
        std::snprintf(buf, sizeof buf, "%.17g", inst.y);
        meta << "y=" << buf << '\n';
        meta << "n=" << g.num_vertices() << '\n';
        meta << "m=" << g.num_edges() << '\n';
        std::snprintf(buf, sizeof buf, "%.17g", inst.z_eta());
        meta << "z_eta=" << buf << '\n';
        meta << "x=";
        for (std::size_t i = 0; i < inst.x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", inst.x[i]);
            meta << (i ? "," : "") << buf;
        }
        meta << '\n';
        if (!meta.flush()) throw GenerationError("write to " + meta_path + " failed");
    }

    SptPtr spt = build_spt(g);
    const ExactTable table = ExactTable::build(g, spt);
    const SeparationReport rep = check_separation(inst, table);
    std::printf("separation checks: %llu\n", static_cast<unsigned long long>(rep.checks));
    std::printf("separation failures: %zu\n", rep.failures.size());
    for (std::size_t i = 0; i < rep.failures.size() && i < 10; ++i) {
        const auto& f = rep.failures[i];
        std::printf("FAILURE i=%u h=%u %s\n", f.i, f.h, f.what.c_str());
    }

    bool distinguish_ok = true;
    if (enumerate) {
        const DistinguishabilityReport d = check_distinguishability(inst);
        std::printf("distinguishability: subsets = %llu, pairs = %llu, undistinguished = %zu\n",
                    static_cast<unsigned long long>(d.subsets),
                    static_cast<unsigned long long>(d.pairs), d.undistinguished.size());
        distinguish_ok = d.ok();
    }

    std::printf("wrote %s and %s\n", out_path.c_str(), meta_path.c_str());
    return rep.ok() && distinguish_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-source edge-fault-tolerant approximate-distance oracles"};
    app.require_subcommand(1);

    std::string graph_path, stretch, out_path, oracle_path;
    bool strict = false;
    auto* build = app.add_subcommand("build", "build an oracle and write its container");
    build->add_option("--graph", graph_path, "graph file")->required();
    build->add_option("--stretch", stretch, "\"2\" or \"eps:<value in (0,1)>\"")->required();
    build->add_option("--out", out_path, "container output path")->required();
    build->add_flag("--strict", strict, "refuse graphs where one fault disconnects a vertex");

    std::vector<std::uint32_t> fail;
    std::uint32_t target = 0;
    auto* query = app.add_subcommand("query", "answer one post-fault distance query");
    query->add_option("--oracle", oracle_path, "oracle container")->required();
    query->add_option("--fail", fail, "failing edge endpoints")->expected(2)->required();
    query->add_option("--target", target, "target vertex")->required();

    std::uint64_t samples = 0, seed = 12345;
    auto* verify = app.add_subcommand("verify", "check answers against exact distances");
    verify->add_option("--graph", graph_path, "graph file")->required();
    verify->add_option("--stretch", stretch, "build and check this oracle kind");
    verify->add_option("--oracle", oracle_path, "check this container instead of building");
    verify->add_option("--samples", samples, "random (edge, target) samples; 0 = exhaustive");
    verify->add_option("--seed", seed, "sample seed");

    std::uint64_t queries = 1000;
    auto* bench = app.add_subcommand("bench", "report build time, size, and query latency");
    bench->add_option("--graph", graph_path, "graph file")->required();
    bench->add_option("--stretch", stretch, "\"2\" or \"eps:<value in (0,1)>\"")->required();
    bench->add_option("--queries", queries, "workload size");
    bench->add_option("--seed", seed, "workload seed");

    std::uint32_t eta = 2;
    double lb_k = 1.0, lb_delta = 1.0, lb_gamma = 1.0, lb_y = 0.0;
    bool enumerate = false;
    auto* genlb = app.add_subcommand("gen-lb", "generate an additive-stretch separation instance");
    genlb->add_option("--eta", eta, "path length / layer size")->required();
    genlb->add_option("--k", lb_k, "additive-gap coefficient");
    genlb->add_option("--delta", lb_delta, "additive-gap exponent, in (0,1]");
    genlb->add_option("--gamma", lb_gamma, "strictness margin, in (0,1]");
    auto* yopt = genlb->add_option("--y", lb_y, "star weight (derived when omitted)");
    genlb->add_option("--out", out_path, "instance graph output path")->required();
    genlb->add_flag("--enumerate", enumerate, "exhaustive distinguishability check (eta <= 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) return cmd_build(graph_path, stretch, out_path, strict);
        if (query->parsed()) return cmd_query(oracle_path, fail, target);
        if (verify->parsed()) return cmd_verify(graph_path, stretch, oracle_path, samples, seed);
        if (bench->parsed()) return cmd_bench(graph_path, stretch, queries, seed);
        if (genlb->parsed())
            return cmd_gen_lb(eta, lb_k, lb_delta, lb_gamma, lb_y, yopt->count() > 0, out_path,
                              enumerate);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
