#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include "ssdo/container.hpp"
#include "ssdo/errors.hpp"
#include "ssdo/exact.hpp"
#include "ssdo/graph.hpp"
#include "ssdo/lower_bound.hpp"
#include "ssdo/oracle2.hpp"
#include "ssdo/oracle_eps.hpp"
#include "ssdo/spt.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ssdo;

namespace {

SptPtr as_spt_ptr(std::shared_ptr<Spt> spt) { return SptPtr(std::move(spt)); }

std::shared_ptr<Spt> make_spt(const Graph& g) { return std::make_shared<Spt>(Spt::build(g)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "single-source edge-fault-tolerant approximate-distance oracles";

    // Base first; later registrations translate first, so subclasses win.
    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<ContractError>(m, "ContractError", base);
    py::register_exception<BuildError>(m, "BuildError", base);
    py::register_exception<GenerationError>(m, "GenerationError", base);
    py::register_exception<QueryError>(m, "QueryError", base);
    py::register_exception<ContainerError>(m, "ContainerError", base);

    m.attr("UNREACHABLE") = kUnreachable;
    m.attr("NO_EDGE") = kNoEdge;

    py::class_<Edge>(m, "Edge")
        .def(py::init([](VertexId u, VertexId v, Weight w) { return Edge{u, v, w}; }), "u"_a,
             "v"_a, "w"_a)
        .def_readonly("u", &Edge::u)
        .def_readonly("v", &Edge::v)
        .def_readonly("w", &Edge::w)
        .def("__repr__", [](const Edge& e) {
            return "Edge(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " +
                   std::to_string(e.w) + ")";
        });

    py::class_<Fingerprint>(m, "Fingerprint")
        .def_readonly("n", &Fingerprint::n)
        .def_readonly("m", &Fingerprint::m)
        .def_readonly("source", &Fingerprint::source)
        .def_readonly("checksum", &Fingerprint::checksum)
        .def(py::self == py::self);

    py::class_<Graph>(m, "Graph")
        .def_static("parse", [](const std::string& text) { return Graph::parse(text); }, "text"_a)
        .def_static(
            "from_edges",
            [](VertexId n, VertexId source,
               const std::vector<std::tuple<VertexId, VertexId, Weight>>& edges) {
                std::vector<Edge> es;
                es.reserve(edges.size());
                for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
                return Graph::from_edges(n, source, std::move(es));
            },
            "n"_a, "source"_a, "edges"_a)
        .def_property_readonly("n", &Graph::num_vertices)
        .def_property_readonly("m", &Graph::num_edges)
        .def_property_readonly("source", &Graph::source)
        .def("edges", &Graph::edges)
        .def("edge", &Graph::edge, "index"_a)
        .def("find_edge", &Graph::find_edge, "u"_a, "v"_a)
        .def("weight_checksum", &Graph::weight_checksum);

    m.def("fingerprint_of", &fingerprint_of, "graph"_a);

    py::class_<SsspResult>(m, "SsspResult")
        .def_readonly("dist", &SsspResult::dist)
        .def_readonly("parent", &SsspResult::parent)
        .def_readonly("parent_edge", &SsspResult::parent_edge);

    m.def("sssp", &sssp, "graph"_a, "root"_a, "excluded"_a = kNoEdge,
          "Dijkstra distances, optionally with one edge removed.");

    py::class_<EdgeRank>(m, "EdgeRank")
        .def(py::init([](std::uint32_t v) { return EdgeRank{v}; }), "value"_a)
        .def_static("infinity", &EdgeRank::infinity)
        .def_readonly("value", &EdgeRank::value)
        .def("is_infinite", &EdgeRank::is_infinite)
        .def(py::self == py::self)
        .def("__repr__", [](EdgeRank r) {
            return r.is_infinite() ? std::string("EdgeRank.infinity()")
                                   : "EdgeRank(" + std::to_string(r.value) + ")";
        });

    py::class_<Spt, std::shared_ptr<Spt>>(m, "Spt")
        .def_property_readonly("n", &Spt::num_vertices)
        .def_property_readonly("source", &Spt::source)
        .def("parent", &Spt::parent, "v"_a)
        .def("dist", &Spt::dist, "v"_a)
        .def("depth_hops", &Spt::depth_hops, "v"_a)
        .def("pre_in", &Spt::pre_in, "v"_a)
        .def("pre_out", &Spt::pre_out, "v"_a)
        .def("order", &Spt::order, "i"_a)
        .def("is_descendant", &Spt::is_descendant, "x"_a, "v"_a)
        .def("tree_distance", &Spt::tree_distance, "z"_a, "t"_a)
        .def("level_ancestor", &Spt::level_ancestor, "x"_a, "hops_up"_a)
        .def("rank_of", &Spt::rank_of, "v"_a)
        .def("rank_vertex", &Spt::rank_vertex, "r"_a)
        .def("tree_edge_rank", &Spt::tree_edge_rank, "a"_a, "b"_a);

    m.def("build_spt", &make_spt, "graph"_a);
    m.def(
        "validate_fault_coverage",
        [](const Graph& g, const std::shared_ptr<Spt>& spt) {
            return validate_fault_coverage(g, *spt);
        },
        "graph"_a, "spt"_a,
        "Tree edges whose failure disconnects some vertex from the source.");

    py::class_<ExactTable>(m, "ExactTable")
        .def_static(
            "build", [](const Graph& g) { return ExactTable::build(g, make_spt(g)); }, "graph"_a)
        .def_static(
            "build",
            [](const Graph& g, std::shared_ptr<Spt> spt) {
                return ExactTable::build(g, as_spt_ptr(std::move(spt)));
            },
            "graph"_a, "spt"_a)
        .def("query",
             static_cast<Weight (ExactTable::*)(VertexId, VertexId, VertexId) const>(
                 &ExactTable::query),
             "u"_a, "v"_a, "t"_a)
        .def("query_rank",
             static_cast<Weight (ExactTable::*)(EdgeRank, VertexId) const>(&ExactTable::query),
             "rank"_a, "t"_a);

    py::enum_<Answer2Case>(m, "Answer2Case")
        .value("NO_FAULT_EFFECT", Answer2Case::kNoFaultEffect)
        .value("DETOUR_PATH", Answer2Case::kDetourPath)
        .value("DOUBLED_BASE", Answer2Case::kDoubledBase);

    py::class_<Answer2>(m, "Answer2")
        .def_readonly("value", &Answer2::value)
        .def_readonly("kind", &Answer2::kind)
        .def_property_readonly("case_name", [](const Answer2& a) { return to_string(a.kind); })
        .def("__repr__", [](const Answer2& a) {
            return "Answer2(" + std::to_string(a.value) + ", " + to_string(a.kind) + ")";
        });

    py::enum_<AnswerEpsCase>(m, "AnswerEpsCase")
        .value("NO_FAULT_EFFECT", AnswerEpsCase::kNoFaultEffect)
        .value("S_PRIME_CANDIDATE", AnswerEpsCase::kSPrimeCandidate)
        .value("BUCKET_CANDIDATE", AnswerEpsCase::kBucketCandidate);

    py::class_<AnswerEps>(m, "AnswerEps")
        .def_readonly("value", &AnswerEps::value)
        .def_readonly("kind", &AnswerEps::kind)
        .def_readonly("bucket", &AnswerEps::bucket)
        .def_property_readonly("case_name", [](const AnswerEps& a) { return to_string(a.kind); })
        .def("__repr__", [](const AnswerEps& a) {
            return "AnswerEps(" + std::to_string(a.value) + ", " + to_string(a.kind) + ")";
        });

    py::class_<Oracle2>(m, "Oracle2")
        .def_static(
            "build",
            [](const Graph& g, bool strict) { return Oracle2::build(g, make_spt(g), strict); },
            "graph"_a, "strict"_a = false)
        .def_static(
            "build",
            [](const Graph& g, std::shared_ptr<Spt> spt, bool strict) {
                return Oracle2::build(g, as_spt_ptr(std::move(spt)), strict);
            },
            "graph"_a, "spt"_a, "strict"_a = false)
        .def("query", &Oracle2::query, "fail_u"_a, "fail_v"_a, "target"_a)
        .def_property_readonly("fingerprint", &Oracle2::fingerprint)
        .def("detour", &Oracle2::detour, "rank"_a)
        .def_property_readonly("detour_count", &Oracle2::detour_count)
        .def("label", &Oracle2::label, "v"_a)
        .def_property_readonly("label_count", &Oracle2::label_count)
        .def_property_readonly("marked_count", &Oracle2::marked_count)
        .def_property_readonly("mark_events", &Oracle2::mark_events)
        .def("is_graph_edge", &Oracle2::is_graph_edge, "u"_a, "v"_a);

    py::class_<EpsBuildStats>(m, "EpsBuildStats")
        .def_readonly("type1_entries", &EpsBuildStats::type1_entries)
        .def_readonly("detour_entries", &EpsBuildStats::detour_entries)
        .def_readonly("max_entries_per_vertex", &EpsBuildStats::max_entries_per_vertex)
        .def_readonly("sandwich_violations", &EpsBuildStats::sandwich_violations)
        .def_readonly("decay_violations", &EpsBuildStats::decay_violations)
        .def_readonly("monotonicity_violations", &EpsBuildStats::monotonicity_violations)
        .def_readonly("magnitude_violations", &EpsBuildStats::magnitude_violations)
        .def_readonly("bucket_conflicts", &EpsBuildStats::bucket_conflicts)
        .def_readonly("placement_failures", &EpsBuildStats::placement_failures);

    py::class_<OracleEps> oracle_eps(m, "OracleEps");

    py::class_<OracleEps::Entry>(oracle_eps, "Entry")
        .def_readonly("vertex", &OracleEps::Entry::vertex)
        .def_readonly("fault", &OracleEps::Entry::fault)
        .def_readonly("value", &OracleEps::Entry::value)
        .def_readonly("bucket", &OracleEps::Entry::bucket);

    oracle_eps
        .def_static("bucket_bound", &OracleEps::bucket_bound, "epsilon"_a)
        .def_static(
            "build",
            [](const Graph& g, double epsilon, bool strict) {
                return OracleEps::build(g, make_spt(g), epsilon, strict);
            },
            "graph"_a, "epsilon"_a, "strict"_a = false)
        .def_static(
            "build",
            [](const Graph& g, std::shared_ptr<Spt> spt, double epsilon, bool strict) {
                return OracleEps::build(g, as_spt_ptr(std::move(spt)), epsilon, strict);
            },
            "graph"_a, "spt"_a, "epsilon"_a, "strict"_a = false)
        .def("query", &OracleEps::query, "fail_u"_a, "fail_v"_a, "target"_a)
        .def("search_bucket", &OracleEps::search_bucket, "bucket"_a, "v"_a, "t"_a, "fail"_a)
        .def_property_readonly("epsilon", &OracleEps::epsilon)
        .def_property_readonly("bucket_count", &OracleEps::bucket_count)
        .def_property_readonly("fingerprint", &OracleEps::fingerprint)
        .def_property_readonly("stats", &OracleEps::stats)
        .def("detour", &OracleEps::detour, "rank"_a)
        .def_property_readonly("detour_count", &OracleEps::detour_count)
        .def("entries", &OracleEps::entries)
        .def("bucket_label", &OracleEps::bucket_label, "bucket"_a, "v"_a)
        .def("bucket_value", &OracleEps::bucket_value, "bucket"_a, "v"_a)
        .def("bucket_size", &OracleEps::bucket_size, "bucket"_a)
        .def("is_graph_edge", &OracleEps::is_graph_edge, "u"_a, "v"_a);

    m.def(
        "save_oracle",
        [](const Oracle2& o, const std::string& path) { return save_oracle_file(o, path); },
        "oracle"_a, "path"_a);
    m.def(
        "save_oracle",
        [](const OracleEps& o, const std::string& path) { return save_oracle_file(o, path); },
        "oracle"_a, "path"_a);
    m.def("load_oracle", &load_oracle_file, "path"_a);
    m.def(
        "dumps_oracle",
        [](const Oracle2& o) {
            std::ostringstream out(std::ios::binary);
            save_oracle(o, out);
            return py::bytes(out.str());
        },
        "oracle"_a);
    m.def(
        "dumps_oracle",
        [](const OracleEps& o) {
            std::ostringstream out(std::ios::binary);
            save_oracle(o, out);
            return py::bytes(out.str());
        },
        "oracle"_a);
    m.def(
        "loads_oracle",
        [](const py::bytes& blob) {
            std::istringstream in(std::string(blob), std::ios::binary);
            return load_oracle(in);
        },
        "blob"_a);

    py::class_<LowerBoundInstance>(m, "LowerBoundInstance")
        .def_readonly("graph", &LowerBoundInstance::graph)
        .def_readonly("eta", &LowerBoundInstance::eta)
        .def_readonly("k", &LowerBoundInstance::k)
        .def_readonly("delta", &LowerBoundInstance::delta)
        .def_readonly("gamma", &LowerBoundInstance::gamma)
        .def_readonly("y", &LowerBoundInstance::y)
        .def_readonly("x", &LowerBoundInstance::x)
        .def("u", &LowerBoundInstance::u, "i"_a)
        .def("t", &LowerBoundInstance::t, "i"_a)
        .def("v", &LowerBoundInstance::v, "i"_a)
        .def_property_readonly("source", &LowerBoundInstance::source)
        .def("path_edge", &LowerBoundInstance::path_edge, "i"_a)
        .def("additive_bound", &LowerBoundInstance::additive_bound, "d"_a)
        .def_property_readonly("z_eta", &LowerBoundInstance::z_eta);

    py::class_<SeparationReport::Failure>(m, "SeparationFailure")
        .def_readonly("i", &SeparationReport::Failure::i)
        .def_readonly("h", &SeparationReport::Failure::h)
        .def_readonly("what", &SeparationReport::Failure::what);

    py::class_<SeparationReport>(m, "SeparationReport")
        .def_readonly("checks", &SeparationReport::checks)
        .def_readonly("failures", &SeparationReport::failures)
        .def("ok", &SeparationReport::ok);

    py::class_<DistinguishabilityReport>(m, "DistinguishabilityReport")
        .def_readonly("subsets", &DistinguishabilityReport::subsets)
        .def_readonly("pairs", &DistinguishabilityReport::pairs)
        .def_readonly("undistinguished", &DistinguishabilityReport::undistinguished)
        .def("ok", &DistinguishabilityReport::ok);

    m.def(
        "gen_lower_bound",
        [](std::uint32_t eta, double k, double delta, double gamma, std::optional<double> y) {
            LowerBoundParams p;
            p.eta = eta;
            p.k = k;
            p.delta = delta;
            p.gamma = gamma;
            p.y = y;
            return gen_lower_bound(p);
        },
        "eta"_a = 2, "k"_a = 1.0, "delta"_a = 1.0, "gamma"_a = 1.0, "y"_a = py::none());
    m.def("check_separation", &check_separation, "instance"_a, "exact"_a);
    m.def(
        "check_separation",
        [](const LowerBoundInstance& inst) {
            const ExactTable table = ExactTable::build(inst.graph, make_spt(inst.graph));
            return check_separation(inst, table);
        },
        "instance"_a);
    m.def("check_distinguishability", &check_distinguishability, "instance"_a);
}
