#include "ssdo/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssdo/errors.hpp"

namespace ssdo {

namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53: sums stay exact below this

// Smallest power of two strictly above Bound, at least 1.
double power_of_two_above(double bound) {
    double p = 1.0;
    while (p <= bound) p *= 2.0;
    return p;
}

Graph build_graph(const LowerBoundInstance& inst) {
    const std::uint32_t eta = inst.eta;
    std::vector<Edge> edges;
    edges.reserve(3 * eta + static_cast<std::size_t>(eta) * eta);
    for (std::uint32_t i = 1; i <= eta; ++i) edges.push_back({inst.u(i), inst.u(i - 1), 0.0});
    for (std::uint32_t i = 1; i <= eta; ++i) edges.push_back({inst.u(0), inst.t(i), inst.y});
    for (std::uint32_t i = 1; i <= eta; ++i) edges.push_back({inst.u(i), inst.v(i), inst.x[i - 1]});
    for (std::uint32_t i = 1; i <= eta; ++i)
        for (std::uint32_t j = 1; j <= eta; ++j) edges.push_back({inst.t(i), inst.v(j), inst.y});
    return Graph::from_edges(3 * eta + 1, inst.source(), std::move(edges));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

double LowerBoundInstance::additive_bound(double d) const {
    return k * std::pow(d, 1.0 - delta);
}

LowerBoundInstance gen_lower_bound(const LowerBoundParams& params) {
    if (params.eta < 2) throw GenerationError("eta must be at least 2");
    if (!(params.k >= 1.0)) throw GenerationError("k must be at least 1");
    if (!(params.delta > 0.0) || !(params.delta <= 1.0))
        throw GenerationError("delta must be in (0,1]");
    if (!(params.gamma > 0.0) || !(params.gamma <= 1.0))
        throw GenerationError("gamma must be in (0,1]");
    if (static_cast<double>(params.eta) < params.k + 1.0)
        throw GenerationError("eta must be at least k+1 (got eta=" + std::to_string(params.eta) +
                              ", k=" + fmt(params.k) + ")");

    LowerBoundInstance inst;
    inst.eta = params.eta;
    inst.k = params.k;
    inst.delta = params.delta;
    inst.gamma = params.gamma;

    if (params.y) {
        if (!(*params.y > 0.0) || !std::isfinite(*params.y))
            throw GenerationError("y must be positive and finite");
        inst.y = *params.y;
    } else {
        // Feasibility bound: (k/2)^(1/delta) * (4*(2n)^(k+2+2/delta))^(1/delta - 1).
        const double n = 3.0 * params.eta + 1.0;
        const double exponent = params.k + 2.0 + 2.0 / params.delta;
        const double bound = std::pow(params.k / 2.0, 1.0 / params.delta) *
                             std::pow(4.0 * std::pow(2.0 * n, exponent), 1.0 / params.delta - 1.0);
        if (!std::isfinite(bound)) throw GenerationError("feasibility bound overflows");
        inst.y = power_of_two_above(bound);
    }

    inst.x.resize(params.eta);
    inst.x[0] = 2.0 * inst.y + inst.gamma;
    for (std::uint32_t i = 1; i < params.eta; ++i)
        inst.x[i] = inst.x[i - 1] + inst.additive_bound(inst.x[i - 1] + inst.y) + inst.gamma;
    if (!(inst.x.back() < kExactLimit))
        throw GenerationError("spoke weights exceed the exactly-representable range");

    // The whole construction stands on this margin: a fault on the path can
    // be answered within additive_bound only by reading the right spoke.
    if (!(2.0 * inst.y > inst.additive_bound(inst.z_eta())))
        throw GenerationError("margin condition failed: 2y = " + fmt(2.0 * inst.y) +
                              " is not above k*z^(1-delta) = " +
                              fmt(inst.additive_bound(inst.z_eta())));

    const double n = 3.0 * params.eta + 1.0;
    const double growth_cap = 4.0 * inst.y * std::pow(2.0 * n, params.k + 2.0 + 2.0 / params.delta);
    if (std::isfinite(growth_cap) && !(inst.z_eta() <= growth_cap))
        throw GenerationError("recurrence outgrew its proven ceiling");

    inst.graph = build_graph(inst);
    return inst;
}

SeparationReport check_separation(const LowerBoundInstance& inst, const ExactTable& exact) {
    SeparationReport rep;
    const Graph& g = inst.graph;
    const Spt& spt = exact.spt();
    auto fail = [&rep](std::uint32_t i, std::uint32_t h, std::string what) {
        rep.failures.push_back({i, h, std::move(what)});
    };

    // Fault-free sanity: d(s, t_h) = y (path + star) and d(s, v_h) = 2y.
    for (std::uint32_t h = 1; h <= inst.eta; ++h) {
        ++rep.checks;
        if (spt.dist(inst.t(h)) != inst.y)
            fail(0, h, "fault-free distance to t_" + std::to_string(h) + " is " +
                           fmt(spt.dist(inst.t(h))) + ", expected " + fmt(inst.y));
        ++rep.checks;
        if (spt.dist(inst.v(h)) != 2.0 * inst.y)
            fail(0, h, "fault-free distance to v_" + std::to_string(h) + " is " +
                           fmt(spt.dist(inst.v(h))) + ", expected " + fmt(2.0 * inst.y));
    }

    for (std::uint32_t i = 1; i <= inst.eta; ++i) {
        const Edge& pe = g.edge(inst.path_edge(i));
        for (std::uint32_t h = 1; h <= inst.eta; ++h) {
            const double expected = inst.x[i - 1] + inst.y;

            // With the path cut at e_i, the only fast route to t_h is the
            // spoke at u_i followed by one bipartite hop.
            ++rep.checks;
            const Weight d = exact.query(pe.u, pe.v, inst.t(h));
            if (d != expected) {
                fail(i, h, "post-fault distance to t_" + std::to_string(h) + " is " + fmt(d) +
                               ", expected " + fmt(expected));
                continue;
            }

            // Remove the bipartite hop as well: every remaining route is
            // more than additive_bound(d) longer, so an oracle answering
            // within the additive bound must distinguish the two graphs.
            ++rep.checks;
            auto spoke = g.find_edge(inst.v(i), inst.t(h));
            if (!spoke) {
                fail(i, h, "bipartite edge missing");
                continue;
            }
            std::vector<Edge> pruned;
            pruned.reserve(g.num_edges() - 2);
            for (EdgeId id = 0; id < g.num_edges(); ++id)
                if (id != inst.path_edge(i) && id != *spoke) pruned.push_back(g.edge(id));
            Graph g2 = Graph::from_edges(g.num_vertices(), g.source(), std::move(pruned));
            const Weight alt = sssp(g2, g2.source()).dist[inst.t(h)];
            const double threshold = expected + inst.additive_bound(expected);
            if (!(alt > threshold))
                fail(i, h, "doubly-deprived distance " + fmt(alt) + " does not exceed " +
                               fmt(threshold));
        }
    }
    return rep;
}

DistinguishabilityReport check_distinguishability(const LowerBoundInstance& inst) {
    if (inst.eta > 3)
        throw ContractError("subset enumeration is exponential; eta <= 3 only");
    const Graph& g = inst.graph;
    const std::uint32_t eta = inst.eta;
    const std::uint32_t bip = eta * eta;
    const EdgeId first_bip = inst.first_bipartite_edge();

    DistinguishabilityReport rep;
    rep.subsets = 1ull << bip;

    // Post-fault distance profile D[i][h] = d_{G_S - e_i}(s, t_h) per subset.
    std::vector<std::vector<Weight>> profile(rep.subsets);
    std::vector<Edge> edges;
    for (std::uint64_t mask = 0; mask < rep.subsets; ++mask) {
        edges.clear();
        for (EdgeId id = 0; id < first_bip; ++id) edges.push_back(g.edge(id));
        for (std::uint32_t b = 0; b < bip; ++b)
            if (mask & (1ull << b)) edges.push_back(g.edge(first_bip + b));
        Graph gs = Graph::from_edges(g.num_vertices(), g.source(), edges);

        auto& prof = profile[mask];
        prof.reserve(static_cast<std::size_t>(eta) * eta);
        for (std::uint32_t i = 1; i <= eta; ++i) {
            SsspResult res = sssp(gs, gs.source(), inst.path_edge(i));
            for (std::uint32_t h = 1; h <= eta; ++h) prof.push_back(res.dist[inst.t(h)]);
        }
    }

    // Two subsets are distinguished when some (i,h) profile entries differ
    // by more than the additive bound of the smaller.
    auto distinguished = [&inst](const std::vector<Weight>& a, const std::vector<Weight>& b) {
        for (std::size_t idx = 0; idx < a.size(); ++idx) {
            const Weight lo = std::min(a[idx], b[idx]);
            const Weight hi = std::max(a[idx], b[idx]);
            if (hi == lo) continue;
            if (hi == kUnreachable) return true;
            if (hi - lo > inst.additive_bound(lo)) return true;
        }
        return false;
    };

    for (std::uint64_t p = 0; p < rep.subsets; ++p)
        for (std::uint64_t q = p + 1; q < rep.subsets; ++q) {
            ++rep.pairs;
            if (!distinguished(profile[p], profile[q])) rep.undistinguished.push_back({p, q});
        }
    return rep;
}

}  // namespace ssdo
