#include "ssdo/container.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "ssdo/errors.hpp"

namespace ssdo {

namespace {

enum : std::uint32_t {
    kSecFingerprint = 1,
    kSecTree = 2,
    kSecEdgeKeys = 3,
    kSecDetours = 4,
    kSecLabels = 5,
    kSecEpsMeta = 6,
    kSecEntries = 7,
};

enum : std::uint8_t { kKindTwo = 1, kKindEps = 2 };

// Any single section larger than this is taken for header corruption
// rather than data; refuse before attempting the allocation.
constexpr std::uint64_t kMaxSectionBytes = 1ull << 40;

void put_u8(std::string& b, std::uint8_t v) { b.push_back(static_cast<char>(v)); }

void put_u16(std::string& b, std::uint16_t v) {
    for (int i = 0; i < 2; ++i) b.push_back(static_cast<char>(v >> (8 * i)));
}

void put_u32(std::string& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>(v >> (8 * i)));
}

void put_u64(std::string& b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>(v >> (8 * i)));
}

void put_i32(std::string& b, std::int32_t v) { put_u32(b, static_cast<std::uint32_t>(v)); }

void put_f64(std::string& b, double v) { put_u64(b, std::bit_cast<std::uint64_t>(v)); }

// Bounds-checked little-endian reads over one section's payload.
class Cursor {
public:
    Cursor(const std::string& data, const char* section)
        : p_(reinterpret_cast<const unsigned char*>(data.data())),
          end_(p_ + data.size()),
          section_(section) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(*p_++) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(*p_++) << (8 * i);
        return v;
    }

    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }

    void finish() const {
        if (p_ != end_)
            throw ContainerError(std::string("trailing bytes in ") + section_ + " section");
    }

private:
    void need(std::size_t k) const {
        if (static_cast<std::size_t>(end_ - p_) < k)
            throw ContainerError(std::string("truncated ") + section_ + " section");
    }

    const unsigned char* p_;
    const unsigned char* end_;
    const char* section_;
};

std::uint64_t write_section(std::ostream& out, std::uint32_t id, const std::string& payload) {
    std::string hdr;
    put_u32(hdr, id);
    put_u64(hdr, payload.size());
    out.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw ContainerError("write failed");
    return hdr.size() + payload.size();
}

std::uint64_t write_header(std::ostream& out, std::uint8_t kind) {
    std::string hdr;
    put_u32(hdr, kContainerMagic);
    put_u8(hdr, kContainerVersion);
    put_u8(hdr, kind);
    put_u16(hdr, 0);
    out.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
    if (!out) throw ContainerError("write failed");
    return hdr.size();
}

std::string sec_fingerprint(const Fingerprint& fp) {
    std::string b;
    put_u32(b, fp.n);
    put_u32(b, fp.m);
    put_u32(b, fp.source);
    put_u64(b, fp.checksum);
    return b;
}

std::string sec_tree(const Spt& t) {
    const VertexId n = t.num_vertices();
    std::string b;
    b.reserve(8 + static_cast<std::size_t>(n) * 16);
    put_u32(b, n);
    put_u32(b, t.source());
    for (VertexId v = 0; v < n; ++v) put_i32(b, t.parent(v));
    for (VertexId v = 0; v < n; ++v) put_f64(b, t.dist(v));
    for (VertexId v = 0; v < n; ++v) put_u32(b, t.pre_in(v));
    return b;
}

std::string sec_edge_keys(const std::vector<std::uint64_t>& keys) {
    std::string b;
    b.reserve(8 + keys.size() * 8);
    put_u64(b, keys.size());
    for (std::uint64_t k : keys) put_u64(b, k);
    return b;
}

template <typename OracleT>
std::string sec_detours(const OracleT& o) {
    std::string b;
    b.reserve(8 + static_cast<std::size_t>(o.detour_count()) * 8);
    put_u64(b, o.detour_count());
    for (std::uint32_t r = 1; r <= o.detour_count(); ++r) put_f64(b, o.detour(EdgeRank{r}));
    return b;
}

std::string sec_labels(const Oracle2& o) {
    std::string b;
    b.reserve(16 + static_cast<std::size_t>(o.label_count()) * 4);
    put_u64(b, o.label_count());
    put_u64(b, o.mark_events());
    for (VertexId v = 0; v < o.label_count(); ++v) put_u32(b, o.label(v).value);
    return b;
}

std::string sec_eps_meta(const OracleEps& o) {
    const EpsBuildStats& s = o.stats();
    std::string b;
    put_f64(b, o.epsilon());
    put_u32(b, o.bucket_count());
    put_u64(b, s.type1_entries);
    put_u64(b, s.detour_entries);
    put_u32(b, s.max_entries_per_vertex);
    put_u64(b, s.sandwich_violations);
    put_u64(b, s.decay_violations);
    put_u64(b, s.monotonicity_violations);
    put_u64(b, s.magnitude_violations);
    put_u64(b, s.bucket_conflicts);
    put_u64(b, s.placement_failures);
    return b;
}

std::string sec_entries(const OracleEps& o) {
    const auto& entries = o.entries();
    std::string b;
    b.reserve(8 + entries.size() * 20);
    put_u64(b, entries.size());
    for (const auto& e : entries) {
        put_u32(b, e.vertex);
        put_u32(b, e.fault.value);
        put_u32(b, e.bucket);
        put_f64(b, e.value);
    }
    return b;
}

// ---- load side ----

struct Sections {
    std::map<std::uint32_t, std::string> by_id;

    const std::string& require(std::uint32_t id, const char* name) const {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw ContainerError(std::string("missing ") + name + " section");
        return it->second;
    }
};

Sections read_sections(std::istream& in) {
    Sections secs;
    for (;;) {
        char hdr[12];
        in.read(hdr, 12);
        if (in.gcount() == 0 && in.eof()) break;
        if (in.gcount() != 12) throw ContainerError("truncated section header");
        std::string hs(hdr, 12);
        Cursor c(hs, "header");
        const std::uint32_t id = c.u32();
        const std::uint64_t len = c.u64();
        if (len > kMaxSectionBytes) throw ContainerError("section length implausible");
        if (secs.by_id.count(id)) throw ContainerError("duplicate section");
        std::string payload(static_cast<std::size_t>(len), '\0');
        in.read(payload.data(), static_cast<std::streamsize>(len));
        if (static_cast<std::uint64_t>(in.gcount()) != len)
            throw ContainerError("truncated section payload");
        secs.by_id.emplace(id, std::move(payload));
    }
    return secs;
}

Fingerprint parse_fingerprint(const std::string& raw) {
    Cursor c(raw, "fingerprint");
    Fingerprint fp;
    fp.n = c.u32();
    fp.m = c.u32();
    fp.source = c.u32();
    fp.checksum = c.u64();
    c.finish();
    return fp;
}

SptPtr parse_tree(const std::string& raw, const Fingerprint& fp) {
    Cursor c(raw, "tree");
    const std::uint32_t n = c.u32();
    const std::uint32_t source = c.u32();
    if (n == 0) throw ContainerError("tree section declares zero vertices");
    if (n != fp.n) throw ContainerError("tree and fingerprint disagree on vertex count");
    if (source >= n) throw ContainerError("tree source out of range");
    std::vector<std::int32_t> parent(n);
    std::vector<Weight> dist(n);
    std::vector<std::uint32_t> pre(n);
    for (auto& p : parent) p = c.i32();
    for (auto& d : dist) d = c.f64();
    for (auto& x : pre) x = c.u32();
    c.finish();

    SptPtr spt;
    try {
        spt = std::make_shared<const Spt>(Spt::from_parts(source, std::move(parent), std::move(dist)));
    } catch (const Error& e) {
        throw ContainerError(std::string("tree reassembly failed: ") + e.what());
    }
    for (VertexId v = 0; v < n; ++v)
        if (spt->pre_in(v) != pre[v])
            throw ContainerError("stored preorder disagrees with reassembled tree");
    return spt;
}

std::vector<std::uint64_t> parse_edge_keys(const std::string& raw, const Fingerprint& fp) {
    Cursor c(raw, "edge keys");
    const std::uint64_t count = c.u64();
    if (count != fp.m) throw ContainerError("edge key count contradicts fingerprint");
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(count));
    for (auto& k : keys) k = c.u64();
    c.finish();
    for (std::size_t i = 1; i < keys.size(); ++i)
        if (keys[i - 1] >= keys[i]) throw ContainerError("edge keys not strictly ascending");
    return keys;
}

std::vector<Weight> parse_detours(const std::string& raw, VertexId n) {
    Cursor c(raw, "detours");
    const std::uint64_t count = c.u64();
    if (count != static_cast<std::uint64_t>(n) - 1)
        throw ContainerError("detour count is not n-1");
    std::vector<Weight> detour(static_cast<std::size_t>(count));
    for (auto& d : detour) d = c.f64();
    c.finish();
    return detour;
}

AnyOracle load_two(const Sections& secs) {
    const Fingerprint fp = parse_fingerprint(secs.require(kSecFingerprint, "fingerprint"));
    SptPtr spt = parse_tree(secs.require(kSecTree, "tree"), fp);
    auto keys = parse_edge_keys(secs.require(kSecEdgeKeys, "edge keys"), fp);
    auto detour = parse_detours(secs.require(kSecDetours, "detours"), fp.n);

    Cursor c(secs.require(kSecLabels, "labels"), "labels");
    const std::uint64_t count = c.u64();
    if (count != fp.n) throw ContainerError("label count is not n");
    const std::uint64_t mark_events = c.u64();
    std::vector<EdgeRank> labels(static_cast<std::size_t>(count));
    for (auto& l : labels) {
        l.value = c.u32();
        if (!l.is_infinite() && (l.value == 0 || l.value >= fp.n))
            throw ContainerError("label rank out of range");
    }
    c.finish();

    return Oracle2::from_parts(std::move(spt), std::move(detour), std::move(labels), fp,
                               std::move(keys), mark_events);
}

AnyOracle load_eps(const Sections& secs) {
    const Fingerprint fp = parse_fingerprint(secs.require(kSecFingerprint, "fingerprint"));
    SptPtr spt = parse_tree(secs.require(kSecTree, "tree"), fp);
    auto keys = parse_edge_keys(secs.require(kSecEdgeKeys, "edge keys"), fp);
    auto detour = parse_detours(secs.require(kSecDetours, "detours"), fp.n);

    Cursor cm(secs.require(kSecEpsMeta, "eps meta"), "eps meta");
    const double epsilon = cm.f64();
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw ContainerError("stored epsilon outside (0,1)");
    const std::uint32_t buckets = cm.u32();
    if (buckets != OracleEps::bucket_bound(epsilon) + 1)
        throw ContainerError("stored bucket count contradicts epsilon");
    EpsBuildStats stats;
    stats.type1_entries = cm.u64();
    stats.detour_entries = cm.u64();
    stats.max_entries_per_vertex = cm.u32();
    stats.sandwich_violations = cm.u64();
    stats.decay_violations = cm.u64();
    stats.monotonicity_violations = cm.u64();
    stats.magnitude_violations = cm.u64();
    stats.bucket_conflicts = cm.u64();
    stats.placement_failures = cm.u64();
    cm.finish();

    Cursor ce(secs.require(kSecEntries, "entries"), "entries");
    const std::uint64_t count = ce.u64();
    std::vector<OracleEps::Entry> entries(static_cast<std::size_t>(count));
    for (auto& e : entries) {
        e.vertex = ce.u32();
        e.fault.value = ce.u32();
        e.bucket = ce.u32();
        e.value = ce.f64();
        if (e.vertex >= fp.n) throw ContainerError("entry vertex out of range");
        if (e.fault.value == 0 || e.fault.value >= fp.n)
            throw ContainerError("entry rank out of range");
        if (e.bucket >= buckets) throw ContainerError("entry bucket out of range");
        if (!(e.value >= 0.0)) throw ContainerError("entry value negative or invalid");
    }
    ce.finish();

    return OracleEps::from_parts(std::move(spt), epsilon, std::move(detour), std::move(entries),
                                 fp, std::move(keys), stats);
}

void require_known_sections(const Sections& secs, std::initializer_list<std::uint32_t> known) {
    for (const auto& [id, payload] : secs.by_id) {
        bool ok = false;
        for (std::uint32_t k : known) ok = ok || id == k;
        if (!ok) throw ContainerError("unknown section id " + std::to_string(id));
    }
}

}  // namespace

std::uint64_t save_oracle(const Oracle2& o, std::ostream& out) {
    std::uint64_t total = write_header(out, kKindTwo);
    total += write_section(out, kSecFingerprint, sec_fingerprint(o.fingerprint()));
    total += write_section(out, kSecTree, sec_tree(o.spt()));
    total += write_section(out, kSecEdgeKeys, sec_edge_keys(o.edge_keys()));
    total += write_section(out, kSecDetours, sec_detours(o));
    total += write_section(out, kSecLabels, sec_labels(o));
    out.flush();
    if (!out) throw ContainerError("write failed");
    return total;
}

std::uint64_t save_oracle(const OracleEps& o, std::ostream& out) {
    std::uint64_t total = write_header(out, kKindEps);
    total += write_section(out, kSecFingerprint, sec_fingerprint(o.fingerprint()));
    total += write_section(out, kSecTree, sec_tree(o.spt()));
    total += write_section(out, kSecEdgeKeys, sec_edge_keys(o.edge_keys()));
    total += write_section(out, kSecDetours, sec_detours(o));
    total += write_section(out, kSecEpsMeta, sec_eps_meta(o));
    total += write_section(out, kSecEntries, sec_entries(o));
    out.flush();
    if (!out) throw ContainerError("write failed");
    return total;
}

namespace {

template <typename OracleT>
std::uint64_t save_to_path(const OracleT& o, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ContainerError("cannot open " + path + " for writing");
    const std::uint64_t bytes = save_oracle(o, out);
    out.close();
    if (!out) throw ContainerError("write to " + path + " failed");
    return bytes;
}

}  // namespace

std::uint64_t save_oracle_file(const Oracle2& o, const std::string& path) {
    return save_to_path(o, path);
}

std::uint64_t save_oracle_file(const OracleEps& o, const std::string& path) {
    return save_to_path(o, path);
}

AnyOracle load_oracle(std::istream& in) {
    char hdr[8];
    in.read(hdr, 8);
    if (in.gcount() != 8) throw ContainerError("truncated header");
    std::string hs(hdr, 8);
    Cursor c(hs, "header");
    if (c.u32() != kContainerMagic) throw ContainerError("not an oracle container");
    const std::uint32_t version = hs[4] & 0xff;
    const std::uint32_t kind = hs[5] & 0xff;
    const std::uint32_t reserved =
        (static_cast<std::uint32_t>(hs[6] & 0xff)) | (static_cast<std::uint32_t>(hs[7] & 0xff) << 8);
    if (version != kContainerVersion)
        throw ContainerError("unsupported container version " + std::to_string(version));
    if (reserved != 0) throw ContainerError("corrupt header");

    Sections secs = read_sections(in);
    try {
        if (kind == kKindTwo) {
            require_known_sections(secs, {kSecFingerprint, kSecTree, kSecEdgeKeys, kSecDetours,
                                          kSecLabels});
            return load_two(secs);
        }
        if (kind == kKindEps) {
            require_known_sections(secs, {kSecFingerprint, kSecTree, kSecEdgeKeys, kSecDetours,
                                          kSecEpsMeta, kSecEntries});
            return load_eps(secs);
        }
    } catch (const ContainerError&) {
        throw;
    } catch (const Error& e) {
        throw ContainerError(std::string("container rejected: ") + e.what());
    }
    throw ContainerError("unknown oracle kind " + std::to_string(kind));
}

AnyOracle load_oracle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContainerError("cannot open " + path);
    return load_oracle(in);
}

const Fingerprint& oracle_fingerprint(const AnyOracle& o) {
    return std::visit([](const auto& x) -> const Fingerprint& { return x.fingerprint(); }, o);
}

void require_fingerprint(const AnyOracle& o, const Graph& g) {
    const Fingerprint& have = oracle_fingerprint(o);
    const Fingerprint want = fingerprint_of(g);
    if (have == want) return;
    std::ostringstream os;
    os << "oracle fingerprint (n=" << have.n << ", m=" << have.m << ", source=" << have.source
       << ", checksum=" << have.checksum << ") does not match the graph (n=" << want.n
       << ", m=" << want.m << ", source=" << want.source << ", checksum=" << want.checksum << ")";
    throw ContainerError(os.str());
}

}  // namespace ssdo
