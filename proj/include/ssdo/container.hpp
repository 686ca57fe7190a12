#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "ssdo/oracle2.hpp"
#include "ssdo/oracle_eps.hpp"

namespace ssdo {

// Binary oracle container. Little-endian throughout; doubles travel as
// their IEEE-754 bit patterns, so values round-trip exactly.
//
//   header   : magic u32, version u8, kind u8 (1 = two-stretch, 2 = eps),
//              reserved u16 (zero)
//   sections : [id u32][byte length u64][payload], in any order, each
//              at most once
//
//   1 fingerprint : n u32, m u32, source u32, checksum u64
//   2 tree        : n u32, source u32, parent i32 x n, dist f64 x n,
//                   preorder u32 x n (redundant; checked on load)
//   3 edge keys   : count u64, key u64 x count (sorted ascending)
//   4 detours     : count u64, f64 x count (by rank, count = n-1)
//   5 labels      : count u64, mark events u64, rank u32 x count
//                   (two-stretch only, count = n)
//   6 eps meta    : epsilon f64, bucket count u32, build stats
//                   (eps only)
//   7 entries     : count u64, then per entry vertex u32, rank u32,
//                   bucket u32, value f64 (eps only)
//
// The loader reassembles the tree from parents and distances alone and
// refuses the container when the stored preorder disagrees, when any
// section is missing, duplicated, truncated, or carries trailing bytes,
// or when counts contradict the fingerprint. All failures surface as
// ContainerError.
inline constexpr std::uint32_t kContainerMagic = 0x4F445353u;  // "SSDO"
inline constexpr std::uint8_t kContainerVersion = 1;

// Serializes the oracle; returns the byte count written.
std::uint64_t save_oracle(const Oracle2& o, std::ostream& out);
std::uint64_t save_oracle(const OracleEps& o, std::ostream& out);

std::uint64_t save_oracle_file(const Oracle2& o, const std::string& path);
std::uint64_t save_oracle_file(const OracleEps& o, const std::string& path);

using AnyOracle = std::variant<Oracle2, OracleEps>;

AnyOracle load_oracle(std::istream& in);
AnyOracle load_oracle_file(const std::string& path);

const Fingerprint& oracle_fingerprint(const AnyOracle& o);

// Throws ContainerError when the oracle was not built from this graph.
void require_fingerprint(const AnyOracle& o, const Graph& g);

}  // namespace ssdo
