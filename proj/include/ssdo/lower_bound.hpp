#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssdo/exact.hpp"
#include "ssdo/graph.hpp"

namespace ssdo {

// Parameters of the additive-stretch separation family. The instance is a
// zero-weight path u_eta..u_0 (source u_eta), a star u_0 -> t_i of weight y,
// a complete bipartite layer (t_i, v_j) of weight y, and spokes (u_i, v_i)
// of weight x_i, where x_1 = 2y + gamma and
// x_{i+1} = x_i + k*(x_i + y)^(1-delta) + gamma.
struct LowerBoundParams {
    std::uint32_t eta = 2;  // path length; also the bipartite layer size
    double k = 1.0;         // additive-gap coefficient
    double delta = 1.0;     // additive-gap exponent, in (0, 1]
    double gamma = 1.0;     // strictness margin, in (0, 1]
    std::optional<double> y;  // star/bipartite weight; derived when absent
};

struct LowerBoundInstance {
    Graph graph;
    std::uint32_t eta = 0;
    double k = 0, delta = 0, gamma = 0, y = 0;
    std::vector<double> x;  // spoke weights x_1..x_eta, at x[i-1]

    // Vertex ids: path u_0..u_eta are 0..eta (source is u_eta),
    // star targets t_1..t_eta follow, spoke tips v_1..v_eta after that.
    VertexId u(std::uint32_t i) const { return i; }
    VertexId t(std::uint32_t i) const { return eta + i; }
    VertexId v(std::uint32_t i) const { return 2 * eta + i; }
    VertexId source() const { return eta; }

    // Edge ids follow construction order: path, star, spokes, bipartite.
    EdgeId path_edge(std::uint32_t i) const { return i - 1; }  // (u_i, u_{i-1})
    EdgeId first_bipartite_edge() const { return 3 * eta; }

    double additive_bound(double d) const;  // k * d^(1-delta)
    double z_eta() const { return x.back() + y; }
};

// Builds and validates an instance. Throws GenerationError when the
// parameters are infeasible (eta < k+1, margin condition violated, or
// weights leaving the exactly-representable range).
LowerBoundInstance gen_lower_bound(const LowerBoundParams& params);

// Replays the separation argument against exact post-fault distances:
// fault-free sanity, d_{G-e_i}(s,t_h) = x_i + y for every (i,h), and the
// doubly-deprived distance (spoke (v_i,t_h) removed as well) exceeding
// x_i + y + additive_bound(x_i + y).
struct SeparationReport {
    std::uint64_t checks = 0;
    struct Failure {
        std::uint32_t i, h;
        std::string what;
    };
    std::vector<Failure> failures;
    bool ok() const { return failures.empty(); }
};

SeparationReport check_separation(const LowerBoundInstance& inst, const ExactTable& exact);

// Exhaustive mode: every subset of the bipartite layer yields a distinct
// post-fault distance profile, so no sub-quadratic-bit structure can
// represent them all. Enumerates 2^(eta^2) subgraphs; eta <= 3 only.
struct DistinguishabilityReport {
    std::uint64_t subsets = 0;
    std::uint64_t pairs = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> undistinguished;
    bool ok() const { return undistinguished.empty(); }
};

DistinguishabilityReport check_distinguishability(const LowerBoundInstance& inst);

}  // namespace ssdo
