#include "prelab/search.hpp"

#include "prelab/entourages.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace prelab {

namespace {

constexpr unsigned kHardCeiling = 4;

Carrier numbered(unsigned n)
{
    std::vector<std::string> labels;
    for (unsigned i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    return Carrier(std::move(labels));
}

void check_ceiling(StructureKind kind, unsigned n)
{
    if (n == 0)
        throw PreconditionError("carrier size must be at least 1");
    if (n > ceiling(kind))
        throw CeilingError(std::string(kind_name(kind)) + " enumeration is capped at n = " + std::to_string(ceiling(kind)) +
                           ", got " + std::to_string(n));
}

bool lex_less(const Encoding& a, const Encoding& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// --- entourage indices ---------------------------------------------------------

struct IndexSpace
{
    EntourageSpace space;
    std::vector<std::uint32_t> inv;
    std::vector<std::uint32_t> comp; // n <= 3 only
    std::vector<std::vector<std::uint32_t>> perm;

    explicit IndexSpace(unsigned n) : space(n)
    {
        const std::uint32_t count = static_cast<std::uint32_t>(space.count());
        inv.resize(count);
        for (std::uint32_t i = 0; i < count; ++i)
            inv[i] = space.index(space.relation(i).inverse());
        if (n <= 3) {
            comp.resize(std::size_t{count} * count);
            for (std::uint32_t a = 0; a < count; ++a)
                for (std::uint32_t b = 0; b < count; ++b)
                    comp[a * count + b] = space.index(space.relation(a).compose(space.relation(b)));
        }
        for (const auto& p : all_permutations(n)) {
            std::vector<std::uint32_t> map(count);
            for (std::uint32_t i = 0; i < count; ++i)
                map[i] = space.index(relabel(space.relation(i), p));
            perm.push_back(std::move(map));
        }
    }

    std::uint32_t compose(std::uint32_t a, std::uint32_t b) const
    {
        if (!comp.empty())
            return comp[a * space.count() + b];
        return space.index(space.relation(a).compose(space.relation(b)));
    }
};

const IndexSpace& index_space(unsigned n)
{
    static std::array<std::once_flag, kHardCeiling + 1> once;
    static std::array<std::unique_ptr<IndexSpace>, kHardCeiling + 1> spaces;
    if (n == 0 || n > kHardCeiling)
        throw CeilingError("entourage enumeration supports 1.." + std::to_string(kHardCeiling) + " points");
    std::call_once(once[n], [n] { spaces[n] = std::make_unique<IndexSpace>(n); });
    return *spaces[n];
}

bool sub(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

AxiomFlags index_flags(const IndexSpace& s, const std::vector<std::uint32_t>& basis)
{
    AxiomFlags f;
    auto every = [&](auto&& pred) { return std::all_of(basis.begin(), basis.end(), pred); };
    auto some = [&](auto&& pred) { return std::any_of(basis.begin(), basis.end(), pred); };
    f.u1 = true;
    f.u2 = every([&](std::uint32_t v) { return some([&](std::uint32_t u) { return sub(s.inv[u], v); }); });
    f.u3 = every([&](std::uint32_t v) {
        return some([&](std::uint32_t u) { return some([&](std::uint32_t w) { return sub(s.compose(u, w), v); }); });
    });
    std::uint32_t meet = ~std::uint32_t{0};
    for (std::uint32_t v : basis)
        meet &= v;
    f.u5 = meet == 0;
    f.u6 = every([&](std::uint32_t u) {
        return every([&](std::uint32_t w) { return some([&](std::uint32_t z) { return sub(z, u & w); }); });
    });
    f.u2sym = every([&](std::uint32_t v) { return some([&](std::uint32_t b) { return sub(b | s.inv[b], v); }); });
    f.u3strong = every([&](std::uint32_t v) { return some([&](std::uint32_t w) { return sub(s.compose(w, w), v); }); });
    return f;
}

Encoding mapped_basis(const std::vector<std::uint32_t>& basis, const std::vector<std::uint32_t>& p)
{
    Encoding out;
    out.reserve(basis.size());
    for (std::uint32_t b : basis)
        out.push_back(p[b]);
    std::sort(out.begin(), out.end());
    return out;
}

bool basis_is_canonical(const IndexSpace& s, const std::vector<std::uint32_t>& basis)
{
    Encoding self(basis.begin(), basis.end());
    for (std::size_t i = 1; i < s.perm.size(); ++i)
        if (lex_less(mapped_basis(basis, s.perm[i]), self))
            return false;
    return true;
}

PreUniformity build_preuniformity(unsigned n, const std::vector<std::uint32_t>& basis)
{
    const IndexSpace& s = index_space(n);
    std::vector<Relation> rels;
    for (std::uint32_t b : basis)
        rels.push_back(s.space.relation(b));
    return PreUniformity(numbered(n), std::move(rels));
}

// --- pretopologies ---------------------------------------------------------------

Encoding sorted_sets(const std::vector<PointSet>& sets)
{
    Encoding out;
    for (PointSet s : sets)
        out.push_back(s.bits());
    std::sort(out.begin(), out.end());
    return out;
}

Encoding relabel_sets(const Encoding& sets, unsigned n, const std::vector<Point>& p)
{
    Encoding out;
    out.reserve(sets.size());
    for (std::uint64_t s : sets)
        out.push_back(relabel(PointSet(n, s), p).bits());
    std::sort(out.begin(), out.end());
    return out;
}

Encoding min_over(const std::vector<std::vector<Point>>& perms, const std::function<Encoding(const std::vector<Point>&)>& f)
{
    Encoding best = f(perms.front());
    for (std::size_t i = 1; i < perms.size(); ++i) {
        Encoding e = f(perms[i]);
        if (lex_less(e, best))
            best = std::move(e);
    }
    return best;
}

// All union-closed covering families on n points, as sorted bitmask lists.
std::vector<Encoding> labelled_pretopologies(unsigned n)
{
    const std::uint64_t full = PointSet::mask(n);
    std::vector<Encoding> out;
    std::vector<std::uint64_t> chosen{0};
    // Unions only grow numerically, so deciding sets in increasing order
    // lets each set be forced when it is already a union of chosen ones.
    std::function<void(std::uint64_t)> walk = [&](std::uint64_t s) {
        if (s == full) {
            Encoding e = chosen;
            e.push_back(full);
            out.push_back(std::move(e));
            return;
        }
        std::uint64_t below = 0;
        for (std::uint64_t c : chosen)
            if ((c & ~s) == 0)
                below |= c;
        if (below == s) {
            chosen.push_back(s);
            walk(s + 1);
            chosen.pop_back();
            return;
        }
        walk(s + 1);
        chosen.push_back(s);
        walk(s + 1);
        chosen.pop_back();
    };
    walk(1);
    return out;
}

// --- pre-proximities ------------------------------------------------------------

std::vector<Encoding> labelled_preproximities(unsigned n)
{
    const std::uint64_t m = std::uint64_t{1} << n;
    const Carrier c = numbered(n);
    // Unordered disjoint nonempty pairs (a <= b numerically), by total size.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t a = 1; a < m; ++a)
        for (std::uint64_t b = a; b < m; ++b)
            if ((a & b) == 0)
                pairs.emplace_back(a, b);
    std::stable_sort(pairs.begin(), pairs.end(), [](auto p, auto q) {
        return std::popcount(p.first | p.second) < std::popcount(q.first | q.second);
    });
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> pos;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        pos[pairs[i]] = i;
    auto key = [](std::uint64_t a, std::uint64_t b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
    // Children: drop one point from either side, keeping both nonempty.
    std::vector<std::vector<std::size_t>> children(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [a, b] = pairs[i];
        for (unsigned x = 0; x < n; ++x) {
            const std::uint64_t bit = std::uint64_t{1} << x;
            if ((a & bit) && a != bit)
                children[i].push_back(pos.at(key(a & ~bit, b)));
            if ((b & bit) && b != bit)
                children[i].push_back(pos.at(key(a, b & ~bit)));
        }
    }

    std::vector<Encoding> out;
    std::vector<char> far(pairs.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == pairs.size()) {
            std::vector<std::uint64_t> rows(m, 0);
            for (std::uint64_t a = 1; a < m; ++a)
                for (std::uint64_t b = 1; b < m; ++b)
                    if ((a & b) != 0 || !far[pos.at(key(a, b))])
                        rows[a] |= std::uint64_t{1} << b;
            const PreProximity d(c, rows);
            if (check_pp_axioms(d).is_preproximity())
                out.push_back(Encoding(rows.begin(), rows.end()));
            return;
        }
        const auto [a, b] = pairs[i];
        if (std::popcount(a) == 1 && std::popcount(b) == 1) {
            far[i] = 1;
            walk(i + 1);
            far[i] = 0;
            return;
        }
        walk(i + 1); // near
        if (std::all_of(children[i].begin(), children[i].end(), [&](std::size_t j) { return far[j] != 0; })) {
            far[i] = 1;
            walk(i + 1);
            far[i] = 0;
        }
    };
    walk(0);
    return out;
}

Encoding relabel_rows(const Encoding& rows, unsigned n, const std::vector<Point>& p)
{
    Encoding out(rows.size(), 0);
    for (std::uint64_t a = 0; a < rows.size(); ++a) {
        const std::uint64_t pa = relabel(PointSet(n, a), p).bits();
        for (std::uint64_t r = rows[a]; r; r &= r - 1) {
            const std::uint64_t b = static_cast<std::uint64_t>(std::countr_zero(r));
            out[pa] |= std::uint64_t{1} << relabel(PointSet(n, b), p).bits();
        }
    }
    return out;
}

// --- groups -----------------------------------------------------------------------

struct GroupEntry
{
    std::size_t number;
    GroupTable group;
    std::vector<std::vector<Point>> automorphisms;
};

const std::vector<GroupEntry>& group_entries()
{
    static const std::vector<GroupEntry> entries = [] {
        std::vector<GroupEntry> out;
        const auto groups = small_groups();
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const GroupTable& g = groups[i];
            GroupEntry e{i, g, {}};
            for (const auto& p : all_permutations(g.size())) {
                bool hom = true;
                for (Point x = 0; x < g.size() && hom; ++x)
                    for (Point y = 0; y < g.size() && hom; ++y)
                        hom = p[g(x, y)] == g(p[x], p[y]);
                if (hom)
                    e.automorphisms.push_back(p);
            }
            out.push_back(std::move(e));
        }
        return out;
    }();
    return entries;
}

Encoding group_encoding(std::size_t number, unsigned n, const Encoding& opens, const Encoding& base,
                        const std::vector<Point>& p)
{
    Encoding out{number, opens.size()};
    for (std::uint64_t s : relabel_sets(opens, n, p))
        out.push_back(s);
    for (std::uint64_t s : relabel_sets(base, n, p))
        out.push_back(s);
    return out;
}

std::size_t group_number(const GroupTable& g, std::vector<Point>* iso)
{
    for (const GroupEntry& e : group_entries()) {
        if (e.group.size() != g.size())
            continue;
        for (const auto& p : all_permutations(g.size())) {
            bool hom = true;
            for (Point x = 0; x < g.size() && hom; ++x)
                for (Point y = 0; y < g.size() && hom; ++y)
                    hom = p[g(x, y)] == e.group(p[x], p[y]);
            if (hom) {
                if (iso)
                    *iso = p;
                return e.number;
            }
        }
    }
    throw CeilingError("only groups of order at most 4 are catalogued");
}

// --- cached canonical lists ---------------------------------------------------

struct CanonicalItem
{
    Encoding encoding;
    Subject subject;
};

Subject subject_for(StructureKind kind, unsigned n, const Encoding& e)
{
    switch (kind) {
    case StructureKind::Pretopology: {
        std::vector<PointSet> opens;
        for (std::uint64_t s : e)
            opens.emplace_back(n, s);
        return PreTopology(numbered(n), std::move(opens));
    }
    case StructureKind::PreProximity: return PreProximity(numbered(n), std::vector<std::uint64_t>(e.begin(), e.end()));
    case StructureKind::PreTopGroup: {
        const GroupEntry& g = group_entries().at(e[0]);
        const std::size_t k = e[1];
        std::vector<PointSet> opens, base;
        for (std::size_t i = 0; i < k; ++i)
            opens.emplace_back(n, e[2 + i]);
        for (std::size_t i = 2 + k; i < e.size(); ++i)
            base.emplace_back(n, e[i]);
        return GroupSubject{g.group, PreTopology(g.group.carrier, std::move(opens)), std::move(base)};
    }
    case StructureKind::PreUniformity: break;
    }
    throw PreconditionError("pre-uniformities are enumerated directly");
}

std::vector<Encoding> canonical_encodings(StructureKind kind, unsigned n)
{
    static std::mutex mutex;
    static std::map<std::pair<int, unsigned>, std::vector<Encoding>> cache;
    std::lock_guard lock(mutex);
    const auto key = std::pair{static_cast<int>(kind), n};
    if (auto it = cache.find(key); it != cache.end())
        return it->second;

    std::vector<Encoding> out;
    const auto perms = all_permutations(n);
    if (kind == StructureKind::Pretopology) {
        for (const Encoding& e : labelled_pretopologies(n))
            if (min_over(perms, [&](const auto& p) { return relabel_sets(e, n, p); }) == e)
                out.push_back(e);
    } else if (kind == StructureKind::PreProximity) {
        for (const Encoding& e : labelled_preproximities(n))
            if (min_over(perms, [&](const auto& p) { return relabel_rows(e, n, p); }) == e)
                out.push_back(e);
    } else if (kind == StructureKind::PreTopGroup) {
        const auto taus = labelled_pretopologies(n);
        for (const GroupEntry& g : group_entries()) {
            if (g.group.size() != n)
                continue;
            for (const Encoding& opens : taus) {
                std::vector<PointSet> sets;
                for (std::uint64_t s : opens)
                    sets.emplace_back(n, s);
                const PreTopology tau(g.group.carrier, sets);
                if (!is_pretopological_group(g.group, tau))
                    continue;
                std::vector<std::uint64_t> at_e;
                for (std::uint64_t s : opens)
                    if ((s >> g.group.e) & 1u)
                        at_e.push_back(s);
                for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << at_e.size()); ++pick) {
                    Encoding base;
                    for (std::size_t i = 0; i < at_e.size(); ++i)
                        if ((pick >> i) & 1u)
                            base.push_back(at_e[i]);
                    const Encoding self = group_encoding(g.number, n, opens, base, g.automorphisms.front());
                    const Encoding best = min_over(g.automorphisms, [&](const auto& p) {
                        return group_encoding(g.number, n, opens, base, p);
                    });
                    if (best == self)
                        out.push_back(self);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    cache[key] = out;
    return out;
}

unsigned env_ceiling()
{
    const char* v = std::getenv("PRETOP_CEILING");
    if (!v || !*v)
        return 0;
    char* end = nullptr;
    const long x = std::strtol(v, &end, 10);
    if (*end != '\0' || x < 1)
        return 0;
    return static_cast<unsigned>(std::min<long>(x, kHardCeiling));
}

std::string join(const Encoding& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i)
        out += (i ? "." : "") + std::to_string(e[i]);
    return out;
}

} // namespace

// --- public -----------------------------------------------------------------------

Shard parse_shard(const std::string& text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            throw std::invalid_argument("no slash");
        std::size_t used = 0;
        const unsigned long k = std::stoul(text.substr(0, slash), &used);
        if (used != slash)
            throw std::invalid_argument("k");
        const std::string rest = text.substr(slash + 1);
        const unsigned long m = std::stoul(rest, &used);
        if (used != rest.size() || m == 0 || k >= m)
            throw std::invalid_argument("m");
        return Shard{static_cast<unsigned>(k), static_cast<unsigned>(m)};
    } catch (const std::logic_error&) {
        throw PreconditionError("shard must be k/m with 0 <= k < m, got \"" + text + "\"");
    }
}

unsigned ceiling(StructureKind k)
{
    if (const unsigned v = env_ceiling())
        return v;
    return k == StructureKind::PreProximity ? 3 : 4;
}

OrderKey canonical_key(const Subject& s)
{
    OrderKey key;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            unsigned n = 0;
            if constexpr (std::is_same_v<T, GroupSubject>)
                n = v.group.size();
            else
                n = v.size();
            key.n = n;
            if constexpr (std::is_same_v<T, PreUniformity>) {
                const IndexSpace& is = index_space(n);
                std::vector<std::uint32_t> basis;
                for (const Relation& r : v.basis())
                    basis.push_back(is.space.index(r));
                key.encoding = mapped_basis(basis, is.perm.front());
                for (const auto& p : is.perm) {
                    Encoding e = mapped_basis(basis, p);
                    if (lex_less(e, key.encoding))
                        key.encoding = std::move(e);
                }
            } else if constexpr (std::is_same_v<T, PreTopology>) {
                const Encoding e = sorted_sets(v.opens());
                key.encoding = min_over(all_permutations(n), [&](const auto& p) { return relabel_sets(e, n, p); });
            } else if constexpr (std::is_same_v<T, PreProximity>) {
                const Encoding e(v.rows().begin(), v.rows().end());
                key.encoding = min_over(all_permutations(n), [&](const auto& p) { return relabel_rows(e, n, p); });
            } else {
                std::vector<Point> iso;
                const std::size_t number = group_number(v.group, &iso);
                // Move the subject onto the catalogued table first.
                Encoding opens, base;
                for (PointSet o : v.tau.opens())
                    opens.push_back(relabel(o, iso).bits());
                for (PointSet b : v.base)
                    base.push_back(relabel(b, iso).bits());
                std::sort(opens.begin(), opens.end());
                std::sort(base.begin(), base.end());
                base.erase(std::unique(base.begin(), base.end()), base.end());
                const GroupEntry& g = group_entries().at(number);
                key.encoding = min_over(g.automorphisms, [&](const auto& p) { return group_encoding(number, n, opens, base, p); });
            }
        },
        s);
    return key;
}

std::string canonical_id(StructureKind k, const OrderKey& key)
{
    return std::string(kind_name(k)) + "/n" + std::to_string(key.n) + "/" + join(key.encoding);
}

AxiomFlags basis_flags(unsigned n, const std::vector<Relation>& basis)
{
    const IndexSpace& s = index_space(n);
    std::vector<Relation> minimal = minimal_antichain(basis);
    std::vector<std::uint32_t> idx;
    for (const Relation& r : minimal)
        idx.push_back(s.space.index(r));
    return index_flags(s, idx);
}

std::size_t enumerate(StructureKind kind, unsigned n, const EnumerationBounds& bounds, const Visitor& visit, Shard shard)
{
    check_ceiling(kind, n);
    if (shard.count == 0 || shard.index >= shard.count)
        throw PreconditionError("invalid shard");
    std::size_t visited = 0;
    if (kind == StructureKind::PreUniformity) {
        const IndexSpace& s = index_space(n);
        const std::size_t max_size = bounds.basis ? bounds.basis : s.space.width();
        s.space.for_each_antichain(
            max_size,
            [&](const std::vector<std::uint32_t>& basis) {
                if (!basis_is_canonical(s, basis))
                    return true;
                ++visited;
                AtomContext ctx([n, basis] { return build_preuniformity(n, basis); }, index_flags(s, basis));
                return visit(ctx, OrderKey{n, Encoding(basis.begin(), basis.end())});
            },
            [&](std::uint32_t first) { return first % shard.count == shard.index; });
        return visited;
    }
    std::size_t seq = 0;
    for (const Encoding& e : canonical_encodings(kind, n)) {
        if (kind == StructureKind::PreTopGroup && bounds.basis && e.size() - 2 - e[1] > bounds.basis)
            continue;
        if (seq++ % shard.count != shard.index)
            continue;
        ++visited;
        AtomContext ctx(subject_for(kind, n, e));
        if (!visit(ctx, OrderKey{n, e}))
            break;
    }
    return visited;
}

std::vector<Subject> enumerate_labelled(StructureKind kind, unsigned n)
{
    if (n == 0 || n > 3)
        throw CeilingError("labelled enumeration supports 1..3 points");
    std::vector<Subject> out;
    switch (kind) {
    case StructureKind::PreUniformity: {
        if (n > 2)
            throw CeilingError("labelled pre-uniformity enumeration supports 1..2 points");
        const IndexSpace& s = index_space(n);
        s.space.for_each_antichain(s.space.width(), [&](const std::vector<std::uint32_t>& b) {
            out.emplace_back(build_preuniformity(n, b));
            return true;
        });
        break;
    }
    case StructureKind::Pretopology:
        for (const Encoding& e : labelled_pretopologies(n))
            out.push_back(subject_for(kind, n, e));
        break;
    case StructureKind::PreProximity:
        for (const Encoding& e : labelled_preproximities(n))
            out.push_back(subject_for(kind, n, e));
        break;
    case StructureKind::PreTopGroup:
        throw PreconditionError("groups are enumerated up to automorphism only");
    }
    return out;
}

// --- queries ----------------------------------------------------------------------

SearchQuery query_from_json(const json& doc)
{
    if (document_kind(doc) != "search-query")
        throw FormatError("expected a \"search-query\" document");
    SearchQuery query;
    try {
        query.kind = parse_kind(doc.at("structure").get<std::string>());
        query.max_n = doc.at("max_n").get<unsigned>();
        query.min_n = doc.value("min_n", 1u);
        query.bounds.basis = doc.value("basis_bound", std::size_t{0});
        query.property = Property::parse(doc.at("property").get<std::string>());
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad search query: ") + e.what());
    }
    if (query.min_n < 1 || query.max_n < query.min_n)
        throw FormatError("bad search query: need 1 <= min_n <= max_n");
    query.property.check_names(query.kind);
    return query;
}

json query_to_json(const SearchQuery& query)
{
    return json{{"kind", "search-query"},
                {"structure", kind_name(query.kind)},
                {"min_n", query.min_n},
                {"max_n", query.max_n},
                {"basis_bound", query.bounds.basis},
                {"property", query.property.text()}};
}

// --- hunting ----------------------------------------------------------------------

json make_certificate(const Property& p, AtomContext& ctx)
{
    auto [trace, value] = full_trace(p, ctx);
    json t = json::array();
    for (const TraceEntry& e : trace)
        t.push_back(json{{"atom", e.atom}, {"value", e.value}});
    const Subject& s = ctx.subject();
    return json{{"kind", "certificate"},
                {"schema_version", kSchemaVersion},
                {"structure", subject_to_json(s)},
                {"property", p.text()},
                {"trace", t},
                {"result", value},
                {"canonical_id", canonical_id(kind_of(s), canonical_key(s))}};
}

json hunt(const SearchQuery& query, Shard shard)
{
    query.property.check_names(query.kind);
    for (unsigned n = query.min_n; n <= query.max_n; ++n)
        check_ceiling(query.kind, n);

    std::optional<json> found;
    json visited = json::array();
    for (unsigned n = query.min_n; n <= query.max_n && !found; ++n) {
        const std::size_t count = enumerate(
            query.kind, n, query.bounds,
            [&](AtomContext& ctx, const OrderKey&) {
                if (!query.property.evaluate([&](const std::string& a) { return ctx.atom(a); }))
                    return true;
                found = make_certificate(query.property, ctx);
                return false;
            },
            shard);
        visited.push_back(json{{"n", n}, {"classes", count}});
    }
    json result = found ? *found
                        : json{{"kind", "exhausted"},
                               {"schema_version", kSchemaVersion},
                               {"query", query_to_json(query)},
                               {"bounds", {{"min_n", query.min_n}, {"max_n", query.max_n}, {"basis_bound", query.bounds.basis}}},
                               {"visited", visited}};
    if (shard.count == 1)
        return result;
    return json{{"kind", "partial"},
                {"schema_version", kSchemaVersion},
                {"shard", {{"index", shard.index}, {"count", shard.count}}},
                {"query", query_to_json(query)},
                {"result", result}};
}

json merge_results(const std::vector<json>& partials)
{
    if (partials.empty())
        throw FormatError("nothing to merge");
    try {
        const json query = partials.front().at("query");
        const unsigned m = partials.front().at("shard").at("count").get<unsigned>();
        std::vector<char> seen(m, 0);
        for (const json& p : partials) {
            if (document_kind(p) != "partial" || p.at("query") != query || p.at("shard").at("count").get<unsigned>() != m)
                throw FormatError("partial records belong to different searches");
            const unsigned k = p.at("shard").at("index").get<unsigned>();
            if (k >= m || seen[k])
                throw FormatError("shard " + std::to_string(k) + " is repeated or out of range");
            seen[k] = 1;
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            throw FormatError("missing shards: have " + std::to_string(partials.size()) + " of " + std::to_string(m));

        std::optional<std::pair<OrderKey, json>> best;
        for (const json& p : partials) {
            const json& r = p.at("result");
            if (document_kind(r) != "certificate")
                continue;
            const OrderKey key = canonical_key(subject_from_json(r.at("structure")));
            if (!best || key < best->first)
                best = {key, r};
        }
        if (best)
            return best->second;

        json out = partials.front().at("result");
        std::map<unsigned, std::size_t> totals;
        for (const json& p : partials)
            for (const json& v : p.at("result").at("visited"))
                totals[v.at("n").get<unsigned>()] += v.at("classes").get<std::size_t>();
        json visited = json::array();
        for (auto [n, c] : totals)
            visited.push_back(json{{"n", n}, {"classes", c}});
        out["visited"] = visited;
        return out;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed partial record: ") + e.what());
    }
}

json hunt_sharded(const SearchQuery& query, unsigned shards)
{
    if (shards <= 1)
        return hunt(query);
    std::vector<json> partials(shards);
    std::vector<std::exception_ptr> errors(shards);
    std::vector<std::thread> workers;
    for (unsigned k = 0; k < shards; ++k)
        workers.emplace_back([&, k] {
            try {
                partials[k] = hunt(query, Shard{k, shards});
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    for (auto& w : workers)
        w.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return merge_results(partials);
}

Replay replay_certificate(const json& cert)
{
    try {
        if (document_kind(cert) != "certificate")
            return {false, "not a certificate"};
        if (cert.at("schema_version").get<int>() != kSchemaVersion)
            return {false, "unsupported schema version"};
        const Property p = Property::parse(cert.at("property").get<std::string>());
        Subject s = subject_from_json(cert.at("structure"));
        const StructureKind kind = kind_of(s);
        p.check_names(kind);
        const std::string id = canonical_id(kind, canonical_key(s));
        if (id != cert.at("canonical_id").get<std::string>())
            return {false, "canonical id differs: recomputed " + id};
        AtomContext ctx(std::move(s));
        auto [trace, value] = full_trace(p, ctx);
        const json& recorded = cert.at("trace");
        if (recorded.size() != trace.size())
            return {false, "trace length differs"};
        for (std::size_t i = 0; i < trace.size(); ++i) {
            if (recorded[i].at("atom").get<std::string>() != trace[i].atom)
                return {false, "trace entry " + std::to_string(i) + " names a different atom"};
            if (recorded[i].at("value").get<bool>() != trace[i].value)
                return {false, "atom " + trace[i].atom + " evaluates to " + (trace[i].value ? "true" : "false")};
        }
        if (cert.at("result").get<bool>() != value)
            return {false, "overall result differs"};
        return {true, ""};
    } catch (const json::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

// --- random structures --------------------------------------------------------

PreUniformity random_preuniformity(unsigned n, std::mt19937_64& rng)
{
    const IndexSpace& s = index_space(n);
    const std::uint32_t full = static_cast<std::uint32_t>(s.space.count() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> size(1, 4);
    for (;;) {
        const int k = size(rng);
        std::vector<std::uint32_t> family;
        if (coin(rng)) {
            // Random relations, grown until each holds a composition and an inverse.
            std::bernoulli_distribution bit(0.3);
            for (int i = 0; i < k; ++i) {
                std::uint32_t v = 0;
                for (unsigned b = 0; b < s.space.bits(); ++b)
                    v |= bit(rng) ? 1u << b : 0u;
                family.push_back(v);
            }
            std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
            for (bool changed = true; changed;) {
                changed = false;
                for (std::uint32_t& v : family) {
                    bool comp = false, inv = false;
                    for (std::uint32_t u : family)
                        for (std::uint32_t w : family)
                            comp = comp || sub(s.compose(u, w), v);
                    for (std::uint32_t u : family)
                        inv = inv || sub(s.inv[u], v);
                    if (!comp) {
                        const std::uint32_t u = family[pick(rng)];
                        v |= s.compose(u, u == v ? v : family[pick(rng)]);
                        changed = true;
                    } else if (!inv) {
                        v |= s.inv[family[pick(rng)]];
                        changed = true;
                    }
                }
            }
        } else {
            // Preorders and their inverses.
            std::bernoulli_distribution bit(0.35);
            for (int i = 0; i < k; ++i) {
                std::uint32_t v = 0;
                for (unsigned b = 0; b < s.space.bits(); ++b)
                    v |= bit(rng) ? 1u << b : 0u;
                for (std::uint32_t t = s.compose(v, v); t != v; t = s.compose(v, v))
                    v = t;
                family.push_back(v);
                if (coin(rng))
                    family.push_back(s.inv[v]);
                else
                    family.push_back(v | s.inv[v]);
            }
        }
        std::uint32_t meet = full;
        for (std::uint32_t v : family)
            meet &= v;
        if (meet != 0)
            continue;
        std::vector<Relation> rels;
        for (std::uint32_t v : family)
            rels.push_back(s.space.relation(v));
        PreUniformity mu(numbered(n), std::move(rels));
        if (mu.valid())
            return mu;
    }
}

EntourageChain random_chain(unsigned n, unsigned max_len, std::mt19937_64& rng)
{
    const Carrier c = numbered(n);
    EntourageChain chain{c, {Relation::full(n)}};
    const unsigned len = std::uniform_int_distribution<unsigned>(1, std::max(1u, max_len))(rng);
    std::bernoulli_distribution keep(0.7);
    for (unsigned i = 1; i <= len; ++i) {
        const Relation& prev = chain.v.back();
        Relation v = Relation::diagonal(n);
        for (Point x = 0; x < n; ++x)
            for (Point y = x + 1; y < n; ++y)
                if (prev.contains(x, y) && keep(rng)) {
                    v.insert(x, y);
                    v.insert(y, x);
                }
        // Drop symmetric pairs until the cube fits.
        while (!v.compose(v).compose(v).subset_of(prev)) {
            std::vector<std::pair<Point, Point>> off;
            for (auto [x, y] : v.pairs())
                if (x < y)
                    off.emplace_back(x, y);
            const auto [x, y] = off[std::uniform_int_distribution<std::size_t>(0, off.size() - 1)(rng)];
            v.erase(x, y);
            v.erase(y, x);
        }
        chain.v.push_back(v);
    }
    return chain;
}

} // namespace prelab
