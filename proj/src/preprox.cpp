#include "prelab/preprox.hpp"

#include <algorithm>
#include <functional>

namespace prelab {

namespace {

std::string set_text(const Carrier& c, std::uint64_t bits)
{
    return format_set(c, PointSet(c.size(), bits));
}

std::string pair_text(const Carrier& c, std::uint64_t a, std::uint64_t b)
{
    return "(" + set_text(c, a) + ", " + set_text(c, b) + ")";
}

bool bit(std::uint64_t row, std::uint64_t i)
{
    return (row >> i) & 1u;
}

/// Superset closure of a family of subsets given as a bitmask over 2^n codes.
std::uint64_t up_close(std::uint64_t family, unsigned n)
{
    for (unsigned i = 0; i < n; ++i)
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
            if (!((s >> i) & 1u) && bit(family, s))
                family |= std::uint64_t{1} << (s | (std::uint64_t{1} << i));
    return family;
}

Carrier sub_carrier(const Carrier& c, PointSet e)
{
    std::vector<std::string> labels;
    e.for_each([&](Point x) { labels.push_back(c.label(x)); });
    return Carrier(std::move(labels));
}

/// Subset of E (as bits over E's points) to subset of X.
std::uint64_t lift(std::uint64_t s, const std::vector<Point>& pts)
{
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if ((s >> i) & 1u)
            out |= std::uint64_t{1} << pts[i];
    return out;
}

} // namespace

PreProximity::PreProximity(Carrier carrier, std::vector<std::uint64_t> rows)
    : carrier_(std::move(carrier)), rows_(std::move(rows))
{
    if (size() > kMaxProximityPoints)
        throw CeilingError("pre-proximities are limited to " + std::to_string(kMaxProximityPoints) + " points");
    if (rows_.size() != subsets())
        throw PreconditionError("nearness matrix must have one row per subset");
    const std::uint64_t m = PointSet::mask(static_cast<unsigned>(subsets()));
    for (auto& r : rows_)
        if (r & ~m)
            throw PreconditionError("nearness row mentions subsets outside the carrier");
}

PreProximity PreProximity::from_near_pairs(const Carrier& carrier, const std::vector<std::pair<PointSet, PointSet>>& near,
                                           bool* added)
{
    const unsigned n = carrier.size();
    if (n > kMaxProximityPoints)
        throw CeilingError("pre-proximities are limited to " + std::to_string(kMaxProximityPoints) + " points");
    const std::size_t m = std::size_t{1} << n;
    std::vector<std::uint64_t> rows(m, 0);
    for (auto [a, b] : near) {
        if (a.universe() != n || b.universe() != n)
            throw PreconditionError("near pair lives on a different carrier");
        rows[a.bits()] |= std::uint64_t{1} << b.bits();
    }
    const std::vector<std::uint64_t> given = rows;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < m; ++a) {
            std::uint64_t r = up_close(rows[a], n);
            for (std::size_t b = 0; b < m; ++b)
                if (bit(rows[b], a))
                    r |= std::uint64_t{1} << b;
            // Larger left sets inherit every near partner.
            for (unsigned i = 0; i < n; ++i)
                if (!((a >> i) & 1u)) {
                    auto& up = rows[a | (std::size_t{1} << i)];
                    changed = changed || (r & ~up) != 0;
                    up |= r;
                }
            if (r != rows[a]) {
                rows[a] = r;
                changed = true;
            }
        }
    }
    if (added)
        *added = rows != given;
    return PreProximity(carrier, std::move(rows));
}

PreProximity PreProximity::discrete(const Carrier& carrier)
{
    const std::size_t m = std::size_t{1} << carrier.size();
    std::vector<std::uint64_t> rows(m, 0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (a & b)
                rows[a] |= std::uint64_t{1} << b;
    return PreProximity(carrier, std::move(rows));
}

PreProximity PreProximity::nonempty_pairs(const Carrier& carrier)
{
    const std::size_t m = std::size_t{1} << carrier.size();
    std::vector<std::uint64_t> rows(m, 0);
    for (std::size_t a = 1; a < m; ++a)
        for (std::size_t b = 1; b < m; ++b)
            rows[a] |= std::uint64_t{1} << b;
    return PreProximity(carrier, std::move(rows));
}

std::vector<std::pair<PointSet, PointSet>> PreProximity::near_pairs() const
{
    std::vector<std::pair<PointSet, PointSet>> out;
    for (std::size_t a = 0; a < subsets(); ++a)
        for (std::size_t b = 0; b < subsets(); ++b)
            if (bit(rows_[a], b))
                out.emplace_back(PointSet(size(), a), PointSet(size(), b));
    return out;
}

bool PreProximity::subset_of(const PreProximity& o) const
{
    if (size() != o.size())
        throw PreconditionError("pre-proximities live on different carriers");
    for (std::size_t a = 0; a < subsets(); ++a)
        if (rows_[a] & ~o.rows_[a])
            return false;
    return true;
}

const char* pp_axiom_name(PpAxiom a)
{
    static const char* names[] = {"PP1", "PP2", "PP3", "PP4", "PP5", "PP6"};
    return names[static_cast<int>(a)];
}

PpReport check_pp_axioms(const PreProximity& delta)
{
    const unsigned n = delta.size();
    const std::size_t m = delta.subsets();
    const std::uint64_t full = m - 1;
    const auto& r = delta.rows();
    const Carrier& c = delta.carrier();
    PpReport rep;
    rep.holds.fill(true);
    rep.consequences.fill(true);
    auto fail = [&](PpAxiom ax, std::string w) {
        const auto i = static_cast<std::size_t>(ax);
        if (rep.holds[i]) {
            rep.holds[i] = false;
            rep.witness[i] = std::move(w);
        }
    };

    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b) {
            if (bit(r[a], b) != bit(r[b], a))
                fail(PpAxiom::PP1, pair_text(c, a, b) + " is near only one way");
            if (bit(r[a], b))
                for (unsigned i = 0; i < n; ++i)
                    if (!((b >> i) & 1u) && !bit(r[a], b | (std::uint64_t{1} << i)))
                        fail(PpAxiom::PP2, pair_text(c, a, b) + " is near but enlarging the second set makes it far");
        }
    for (Point x = 0; x < n; ++x)
        for (Point y = 0; y < n; ++y)
            if (bit(r[std::uint64_t{1} << x], std::uint64_t{1} << y) != (x == y))
                fail(PpAxiom::PP3, pair_text(c, std::uint64_t{1} << x, std::uint64_t{1} << y) +
                                       (x == y ? " is far" : " is near"));
    if (bit(r[0], full))
        fail(PpAxiom::PP4, "the empty set is near X");
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b) {
            if (bit(r[a], b))
                continue;
            bool found = false;
            for (std::uint64_t cc = 0; cc < m && !found; ++cc)
                found = !bit(r[a], cc) && !bit(r[b], full & ~cc);
            if (!found)
                fail(PpAxiom::PP5, pair_text(c, a, b) + " is far but no C has A far C and B far X - C");
        }
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b)
            for (std::uint64_t cc = 0; cc < m; ++cc)
                if (bit(r[a], b | cc) != (bit(r[a], b) || bit(r[a], cc)))
                    fail(PpAxiom::PP6, set_text(c, a) + " near " + set_text(c, b | cc) + " fails to split over " +
                                           set_text(c, b) + " and " + set_text(c, cc));

    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b) {
            if ((a & b) && !bit(r[a], b))
                rep.consequences[0] = false;
            if (a == 0 && bit(r[a], b))
                rep.consequences[1] = false;
            if (bit(r[a], b))
                for (std::uint64_t a2 = a; a2 < m; a2 = (a2 + 1) | a)
                    for (std::uint64_t b2 = b; b2 < m; b2 = (b2 + 1) | b)
                        if (!bit(r[a2], b2))
                            rep.consequences[2] = false;
        }
    return rep;
}

void require_preproximity(const PreProximity& delta, const char* what)
{
    const PpReport rep = check_pp_axioms(delta);
    for (std::size_t i = 0; i < 5; ++i)
        if (!rep.holds[i])
            throw AxiomError(what, std::string("not a pre-proximity: ") + pp_axiom_name(static_cast<PpAxiom>(i)) +
                                       " fails (" + rep.witness[i] + ")");
}

std::vector<PointSet> closure_map(const PreProximity& delta)
{
    const unsigned n = delta.size();
    std::vector<PointSet> c;
    for (std::uint64_t a = 0; a < delta.subsets(); ++a) {
        PointSet s = PointSet::empty(n);
        for (Point x = 0; x < n; ++x)
            if (bit(delta.rows()[std::uint64_t{1} << x], a))
                s.insert(x);
        c.push_back(s);
    }
    return c;
}

ClosureReport closure_operator(const PreProximity& delta)
{
    require_preproximity(delta, "closure operator");
    const unsigned n = delta.size();
    const std::size_t m = delta.subsets();
    auto c = closure_map(delta);
    bool a = c[0].is_empty(), b = true, cc = true, d = true, lll = true;
    for (std::uint64_t s = 0; s < m; ++s) {
        b = b && PointSet(n, s).subset_of(c[s]);
        cc = cc && c[c[s].bits()] == c[s];
        for (std::uint64_t t = 0; t < m; ++t) {
            if ((s & ~t) == 0)
                d = d && c[s].subset_of(c[t]);
            if (!delta.near(PointSet(n, t), PointSet(n, s)))
                lll = lll && !delta.near(PointSet(n, t), c[s]);
        }
    }
    std::vector<PointSet> opens;
    for (std::uint64_t u = 0; u < m; ++u) {
        const std::uint64_t comp = (m - 1) & ~u;
        if (c[comp].bits() == comp)
            opens.emplace_back(n, u);
    }
    PreTopology tau(delta.carrier(), std::move(opens));
    const bool t1 = is_t1(tau);
    return ClosureReport{std::move(c), a, b, cc, d, lll, std::move(tau), t1};
}

PreTopology induced_pretopology(const PreProximity& delta)
{
    return closure_operator(delta).tau;
}

PreProximity delta_from_preuniformity(const PreUniformity& mu)
{
    mu.require_valid("induced pre-proximity");
    const unsigned n = mu.size();
    if (n > kMaxProximityPoints)
        throw CeilingError("pre-proximities are limited to " + std::to_string(kMaxProximityPoints) + " points");
    const std::size_t m = std::size_t{1} << n;
    std::vector<std::uint64_t> rows(m, 0);
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b) {
            const Relation rect = Relation::rectangle(PointSet(n, a), PointSet(n, b));
            if (std::all_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& v) { return v.meets(rect); }))
                rows[a] |= std::uint64_t{1} << b;
        }
    return PreProximity(mu.carrier(), std::move(rows));
}

// ---------------------------------------------------------------------------

NbhdRelation nbhd_relation(const PreProximity& delta)
{
    const std::size_t m = delta.subsets();
    std::vector<std::uint64_t> ll(m, 0);
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b)
            if (!bit(delta.rows()[a], (m - 1) & ~b))
                ll[a] |= std::uint64_t{1} << b;
    return NbhdRelation{delta.carrier(), std::move(ll)};
}

namespace {

PreProximity raw_delta_from_ll(const NbhdRelation& ll)
{
    const std::size_t m = ll.ll.size();
    std::vector<std::uint64_t> rows(m, 0);
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b)
            if (!bit(ll.ll[a], (m - 1) & ~b))
                rows[a] |= std::uint64_t{1} << b;
    return PreProximity(ll.carrier, std::move(rows));
}

} // namespace

PsiReport check_psi(const NbhdRelation& rel)
{
    const unsigned n = rel.carrier.size();
    const std::size_t m = std::size_t{1} << n;
    if (rel.ll.size() != m)
        throw PreconditionError("neighbourhood relation must have one row per subset");
    const std::uint64_t full = m - 1;
    const auto& ll = rel.ll;
    const Carrier& c = rel.carrier;
    PsiReport rep;
    rep.holds.fill(true);
    auto fail = [&](std::size_t i, std::string w) {
        if (rep.holds[i]) {
            rep.holds[i] = false;
            rep.witness[i] = std::move(w);
        }
    };

    const PreProximity delta = raw_delta_from_ll(rel);
    const auto cl = closure_map(delta);
    std::vector<bool> open(m);
    for (std::uint64_t u = 0; u < m; ++u)
        open[u] = cl[full & ~u].bits() == (full & ~u);

    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b) {
            if (!bit(ll[a], b))
                continue;
            const std::string w = pair_text(c, a, b);
            if (!bit(ll[full & ~b], full & ~a))
                fail(0, w + ": complements are not related");
            if (a & ~b)
                fail(1, w + ": first set is not inside the second");
            for (std::uint64_t a2 = 0; a2 < m; ++a2)
                if ((a2 & ~a) == 0)
                    for (std::uint64_t d = b; d < m; d = (d + 1) | b)
                        if (!bit(ll[a2], d))
                            fail(2, pair_text(c, a2, d) + " is not related although it sits between " + w);
            bool found = false;
            for (std::uint64_t u = 0; u < m && !found; ++u)
                found = open[u] && bit(ll[a], u) && bit(ll[cl[u].bits()], b);
            if (!found)
                fail(4, w + ": no open U with A << U and cl(U) << B");
        }
    if (!bit(ll[0], 0) || !bit(ll[full], full))
        fail(3, "empty << empty or X << X fails");
    for (Point x = 0; x < n; ++x)
        for (std::uint64_t a = 0; a < m; ++a) {
            // A is a neighbourhood of x when some open U has x in U inside A.
            bool nbhd = false;
            for (std::uint64_t u = 0; u < m && !nbhd; ++u)
                nbhd = open[u] && ((u >> x) & 1u) && (u & ~a) == 0;
            if (nbhd && !bit(ll[std::uint64_t{1} << x], a))
                fail(5, "{" + c.label(x) + "} << " + set_text(c, a) + " fails for a neighbourhood");
        }
    return rep;
}

PreProximity delta_from_ll(const NbhdRelation& ll)
{
    const PsiReport rep = check_psi(ll);
    for (std::size_t i = 0; i < 5; ++i)
        if (!rep.holds[i])
            throw AxiomError("PSI" + std::to_string(i + 1), rep.witness[i]);
    return raw_delta_from_ll(ll);
}

// ---------------------------------------------------------------------------

Relation t_set(PointSet a, PointSet b)
{
    return Relation::rectangle(a, b).complement();
}

PreUniformity mu_delta(const PreProximity& delta)
{
    require_preproximity(delta, "mu_delta");
    const unsigned n = delta.size();
    if (n > kMaxRelationPoints)
        throw CeilingError("carrier too large for relations");
    std::vector<Relation> gens;
    for (std::uint64_t a = 0; a < delta.subsets(); ++a)
        for (std::uint64_t b = 0; b < delta.subsets(); ++b)
            if (!bit(delta.rows()[a], b))
                gens.push_back(t_set(PointSet(n, a), PointSet(n, b)));
    return PreUniformity(delta.carrier(), std::move(gens));
}

TotallyBoundedReflection totally_bounded_reflection(const PreUniformity& mu)
{
    PreUniformity w = mu_delta(delta_from_preuniformity(mu));
    const bool eq = w == mu;
    return TotallyBoundedReflection{std::move(w), eq};
}

PreProximity sup_preproximities(const std::vector<PreProximity>& family)
{
    if (family.empty())
        throw PreconditionError("sup of an empty family");
    const Carrier& carrier = family.front().carrier();
    const unsigned n = carrier.size();
    for (const auto& d : family)
        if (d.carrier() != carrier)
            throw PreconditionError("pre-proximities live on different carriers");
    if (n > 3)
        throw CeilingError("the cover quantifier is enumerated literally; at most 3 points");
    const std::size_t m = std::size_t{1} << n;

    // Covers of S by nonempty subsets of S, as bitmasks over subset codes.
    auto covers_of = [&](std::uint64_t s) {
        std::vector<std::vector<std::uint64_t>> out;
        std::vector<std::uint64_t> parts;
        for (std::uint64_t t = 1; t < m; ++t)
            if ((t & ~s) == 0)
                parts.push_back(t);
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << parts.size()); ++pick) {
            std::vector<std::uint64_t> blocks;
            std::uint64_t u = 0;
            for (std::size_t i = 0; i < parts.size(); ++i)
                if ((pick >> i) & 1u) {
                    blocks.push_back(parts[i]);
                    u |= parts[i];
                }
            if (u == s)
                out.push_back(std::move(blocks));
        }
        return out;
    };
    std::vector<std::vector<std::vector<std::uint64_t>>> covers(m);
    for (std::uint64_t s = 0; s < m; ++s)
        covers[s] = covers_of(s);

    auto near_all = [&](std::uint64_t a, std::uint64_t b) {
        return std::all_of(family.begin(), family.end(), [&](const PreProximity& d) { return bit(d.rows()[a], b); });
    };
    std::vector<std::uint64_t> rows(m, 0);
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b) {
            bool near = true;
            for (const auto& ca : covers[a]) {
                for (const auto& cb : covers[b]) {
                    bool hit = false;
                    for (auto x : ca)
                        for (auto y : cb)
                            hit = hit || near_all(x, y);
                    if (!hit) {
                        near = false;
                        break;
                    }
                }
                if (!near)
                    break;
            }
            if (near)
                rows[a] |= std::uint64_t{1} << b;
        }
    return PreProximity(carrier, std::move(rows));
}

bool is_coarsest_common_refinement(const PreProximity& candidate, const std::vector<PreProximity>& family,
                                   const std::vector<PreProximity>& pool)
{
    auto below_all = [&](const PreProximity& d) {
        return std::all_of(family.begin(), family.end(), [&](const PreProximity& f) { return d.subset_of(f); });
    };
    if (!below_all(candidate))
        return false;
    return std::all_of(pool.begin(), pool.end(), [&](const PreProximity& d) { return !below_all(d) || d.subset_of(candidate); });
}

PreProximity finest_compatible(const PreTopology& tau)
{
    if (!is_hausdorff(tau))
        throw AxiomError("finest compatible", "not normal Hausdorff: the pre-topology is not Hausdorff");
    if (auto w = normality_counterexample(tau))
        throw AxiomError("finest compatible", "not normal Hausdorff: closed sets " + format_set(tau.carrier(), w->first) +
                                                  " and " + format_set(tau.carrier(), w->second) +
                                                  " have no disjoint open neighbourhoods");
    const unsigned n = tau.size();
    if (n > kMaxProximityPoints)
        throw CeilingError("pre-proximities are limited to " + std::to_string(kMaxProximityPoints) + " points");
    const std::size_t m = std::size_t{1} << n;
    std::vector<PointSet> cl;
    for (std::uint64_t s = 0; s < m; ++s)
        cl.push_back(tau.closure(PointSet(n, s)));
    std::vector<std::uint64_t> rows(m, 0);
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b)
            if (cl[a].meets(cl[b]))
                rows[a] |= std::uint64_t{1} << b;
    return PreProximity(tau.carrier(), std::move(rows));
}

bool is_delta_preuniform_cover(const std::vector<PointSet>& cover, const PreProximity& delta)
{
    const unsigned n = delta.size();
    if (!is_cover(n, cover))
        throw PreconditionError("family is not a cover of the carrier");
    const auto ll = nbhd_relation(delta);
    const std::size_t m = delta.subsets();
    // Only maximal admissible B_i matter.
    std::vector<std::vector<std::uint64_t>> options;
    for (PointSet a : cover) {
        std::vector<std::uint64_t> all;
        for (std::uint64_t b = 0; b < m; ++b)
            if (bit(ll.ll[b], a.bits()))
                all.push_back(b);
        std::vector<std::uint64_t> maximal;
        for (auto b : all)
            if (std::none_of(all.begin(), all.end(), [&](std::uint64_t o) { return o != b && (b & ~o) == 0; }))
                maximal.push_back(b);
        options.push_back(std::move(maximal));
    }
    const std::uint64_t full = m - 1;
    std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t covered) {
        if (covered == full)
            return true;
        if (i == options.size())
            return false;
        for (auto b : options[i])
            if (rec(i + 1, covered | b))
                return true;
        return false;
    };
    return rec(0, 0);
}

bool far_pair_criterion(const PreProximity& delta, PointSet a, PointSet b)
{
    // A cover avoiding the pair uses blocks inside X - A or X - B; repeating
    // those two blocks and taking singleton B_i shows such a cover exists iff
    // every point has {x} << X - A or {x} << X - B, i.e. iff cl(A) and cl(B)
    // are disjoint.
    const auto c = closure_map(delta);
    return c[a.bits()].meets(c[b.bits()]);
}

PreProximity subspace(const PreProximity& delta, PointSet e)
{
    if (e.is_empty())
        throw PreconditionError("subspace of the empty set");
    if (e.universe() != delta.size())
        throw PreconditionError("subset lives on a different carrier");
    const auto pts = e.points();
    const std::size_t k = std::size_t{1} << pts.size();
    std::vector<std::uint64_t> rows(k, 0);
    for (std::uint64_t a = 0; a < k; ++a)
        for (std::uint64_t b = 0; b < k; ++b)
            if (bit(delta.rows()[lift(a, pts)], lift(b, pts)))
                rows[a] |= std::uint64_t{1} << b;
    return PreProximity(sub_carrier(delta.carrier(), e), std::move(rows));
}

PreTopology relativize(const PreTopology& tau, PointSet e)
{
    if (e.is_empty())
        throw PreconditionError("subspace of the empty set");
    const auto pts = e.points();
    std::vector<PointSet> opens;
    for (PointSet u : tau.opens()) {
        PointSet trace = PointSet::empty(static_cast<unsigned>(pts.size()));
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (u.contains(pts[i]))
                trace.insert(static_cast<Point>(i));
        opens.push_back(trace);
    }
    return PreTopology(sub_carrier(tau.carrier(), e), std::move(opens));
}

PreUniformity restrict_preuniformity(const PreUniformity& mu, PointSet e)
{
    if (e.is_empty())
        throw PreconditionError("subspace of the empty set");
    const auto pts = e.points();
    const unsigned k = static_cast<unsigned>(pts.size());
    std::vector<Relation> gens;
    for (const Relation& u : mu.basis()) {
        Relation r(k);
        for (Point i = 0; i < k; ++i)
            for (Point j = 0; j < k; ++j)
                if (u.contains(pts[i], pts[j]))
                    r.insert(i, j);
        gens.push_back(r);
    }
    return PreUniformity(sub_carrier(mu.carrier(), e), std::move(gens));
}

} // namespace prelab
