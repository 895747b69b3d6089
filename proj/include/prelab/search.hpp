#pragma once

// Canonical enumeration of small structures and the property-driven hunter.
//
// Structures are compared by (n, encoding). Encodings:
//   pre-uniformity  sorted entourage indices of the minimal antichain
//   pretopology     sorted open bitmasks
//   pre-proximity   near-matrix rows
//   pretopgroup     group number, then opens, then base at e
// The canonical representative is the least encoding over all relabelings
// (automorphisms only, for groups).

#include "prelab/property.hpp"

#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace prelab {

using Encoding = std::vector<std::uint64_t>;

struct OrderKey
{
    unsigned n = 0;
    Encoding encoding;
    auto operator<=>(const OrderKey&) const = default;
};

/// Slice k of m: the work items whose partition number is k mod m.
struct Shard
{
    unsigned index = 0;
    unsigned count = 1;
};

/// Parses "k/m"; throws PreconditionError.
Shard parse_shard(const std::string& text);

/// Enumeration ceilings: 4 for pretopologies, pre-uniformities and groups,
/// 3 for pre-proximities. PRETOP_CEILING replaces them for every kind;
/// values above 4 are clamped to 4.
unsigned ceiling(StructureKind k);

OrderKey canonical_key(const Subject& s);
std::string canonical_id(StructureKind k, const OrderKey& key);

struct EnumerationBounds
{
    /// Largest basis (pre-uniformities) or base at e (groups); 0 = no bound.
    std::size_t basis = 0;
};

/// Receives each canonical representative in (n, encoding) order within
/// the shard; returning false stops the enumeration.
using Visitor = std::function<bool(AtomContext&, const OrderKey&)>;

/// Calls `visit` once per isomorphism class on n points. Returns the number
/// of classes visited. Throws CeilingError above the ceiling.
std::size_t enumerate(StructureKind kind, unsigned n, const EnumerationBounds& bounds, const Visitor& visit,
                      Shard shard = {});

/// Every structure of the kind on n points without canonical pruning
/// (oracle side of the orbit count). n <= 3.
std::vector<Subject> enumerate_labelled(StructureKind kind, unsigned n);

struct SearchQuery
{
    StructureKind kind = StructureKind::PreUniformity;
    unsigned min_n = 1;
    unsigned max_n = 1;
    EnumerationBounds bounds;
    Property property;
};

/// {"kind":"search-query","structure":..,"min_n":..,"max_n":..,"basis_bound":..,"property":..}.
/// Throws FormatError, or PreconditionError for unresolvable names.
SearchQuery query_from_json(const json& doc);
json query_to_json(const SearchQuery& query);

/// A certificate or an exhaustion record. With a non-trivial shard the
/// record carries a "shard" field and is meant for merge_results.
json hunt(const SearchQuery& query, Shard shard = {});

/// Every shard of m, merged: byte-identical to hunt(query) for any m.
json hunt_sharded(const SearchQuery& query, unsigned shards);

/// Least certificate across the partial records, else an exhaustion record
/// with the visit counts summed. Throws FormatError when the shards do not
/// form a complete partition of one query.
json merge_results(const std::vector<json>& partials);

json make_certificate(const Property& p, AtomContext& ctx);

struct Replay
{
    bool ok = false;
    std::string reason;
};

/// Reloads the structure, recomputes the canonical id and every atom, and
/// compares them with the recorded trace and result.
Replay replay_certificate(const json& cert);
inline bool verify_certificate(const json& cert) { return replay_certificate(cert).ok; }

// --- random structures --------------------------------------------------------

/// A valid pre-uniformity on n points: random relations repaired until
/// every member has a composition and an inverse inside it, or unions of
/// random preorders with their inverses. Retries until U5 holds.
PreUniformity random_preuniformity(unsigned n, std::mt19937_64& rng);

/// A valid chain V_0 = X x X, V_1, ..., V_k with 1 <= k <= max_len.
EntourageChain random_chain(unsigned n, unsigned max_len, std::mt19937_64& rng);

/// Fast axiom flags straight from a basis (no up-closure built).
AxiomFlags basis_flags(unsigned n, const std::vector<Relation>& basis);

} // namespace prelab
