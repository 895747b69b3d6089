#include "prelab/pretop.hpp"

#include <algorithm>
#include <unordered_set>

namespace prelab {

namespace {

std::vector<PointSet> sorted_unique(std::vector<PointSet> family)
{
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    return family;
}

PointSet box(PointSet u, PointSet v, unsigned right_size)
{
    std::uint64_t bits = 0;
    u.for_each([&](Point x) { bits |= v.bits() << (x * right_size); });
    return PointSet(u.universe() * right_size, bits);
}

} // namespace

std::vector<PointSet> union_closure(unsigned n, const std::vector<PointSet>& family)
{
    std::unordered_set<std::uint64_t> seen{0};
    std::vector<std::uint64_t> members{0};
    for (const PointSet& b : family) {
        if (b.universe() != n)
            throw PreconditionError("subset lives on a different carrier");
        const std::size_t current = members.size();
        for (std::size_t i = 0; i < current; ++i) {
            std::uint64_t u = members[i] | b.bits();
            if (seen.insert(u).second)
                members.push_back(u);
        }
    }
    std::vector<PointSet> out;
    out.reserve(members.size());
    for (auto m : members)
        out.emplace_back(n, m);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_pretopology(unsigned n, const std::vector<PointSet>& family)
{
    std::unordered_set<std::uint64_t> members;
    for (const PointSet& s : family) {
        if (s.universe() != n)
            return false;
        members.insert(s.bits());
    }
    if (!members.count(0) || !members.count(PointSet::mask(n)))
        return false;
    // Binary-union closure plus the empty union gives closure under all unions.
    for (auto a : members)
        for (auto b : members)
            if (!members.count(a | b))
                return false;
    return true;
}

PreTopology::PreTopology(Carrier carrier, std::vector<PointSet> opens)
    : carrier_(std::move(carrier)), opens_(sorted_unique(std::move(opens)))
{
    if (!is_pretopology(carrier_.size(), opens_))
        throw PreconditionError("family is not a pre-topology: it must contain the empty set, cover the carrier and be closed under unions");
}

PreTopology PreTopology::generate(const Carrier& carrier, const std::vector<PointSet>& prebase)
{
    const unsigned n = carrier.size();
    PointSet cover = PointSet::empty(n);
    for (const PointSet& b : prebase) {
        if (b.universe() != n)
            throw PreconditionError("prebase member lives on a different carrier");
        cover |= b;
    }
    if (!cover.is_full())
        throw PreconditionError("prebase does not cover carrier");
    return PreTopology(carrier, union_closure(n, prebase));
}

PreTopology PreTopology::discrete(const Carrier& carrier)
{
    return PreTopology(carrier, all_subsets(carrier.size()));
}

PreTopology PreTopology::indiscrete(const Carrier& carrier)
{
    const unsigned n = carrier.size();
    return PreTopology(carrier, {PointSet::empty(n), PointSet::full(n)});
}

bool PreTopology::is_open(PointSet s) const
{
    if (s.universe() != size())
        throw PreconditionError("subset lives on a different carrier");
    return std::binary_search(opens_.begin(), opens_.end(), s);
}

PointSet PreTopology::interior(PointSet s) const
{
    if (s.universe() != size())
        throw PreconditionError("subset lives on a different carrier");
    PointSet acc = PointSet::empty(size());
    for (const PointSet& o : opens_)
        if (o.subset_of(s))
            acc |= o;
    return acc;
}

PointSet PreTopology::closure(PointSet s) const
{
    return interior(s.complement()).complement();
}

std::vector<PointSet> PreTopology::closed_sets() const
{
    std::vector<PointSet> out;
    out.reserve(opens_.size());
    for (const PointSet& o : opens_)
        out.push_back(o.complement());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PointSet> PreTopology::minimal_open_neighborhoods(Point x) const
{
    std::vector<PointSet> containing;
    for (const PointSet& o : opens_)
        if (o.contains(x))
            containing.push_back(o);
    std::vector<PointSet> out;
    for (const PointSet& o : containing) {
        bool minimal = std::none_of(containing.begin(), containing.end(), [&](PointSet p) { return p != o && p.subset_of(o); });
        if (minimal)
            out.push_back(o);
    }
    return out;
}

// ---------------------------------------------------------------------------

PointMap::PointMap(unsigned source_size, unsigned target_size, std::vector<Point> v)
    : source(source_size), target(target_size), values(std::move(v))
{
    if (values.size() != source)
        throw PreconditionError("map must assign a value to every source point");
    for (Point y : values)
        if (y >= target)
            throw PreconditionError("map value out of range");
}

PointMap PointMap::identity(unsigned n)
{
    std::vector<Point> v(n);
    for (Point x = 0; x < n; ++x)
        v[x] = x;
    return PointMap(n, n, std::move(v));
}

PointSet PointMap::preimage(PointSet s) const
{
    PointSet out = PointSet::empty(source);
    for (Point x = 0; x < source; ++x)
        if (s.contains(values[x]))
            out.insert(x);
    return out;
}

PointSet PointMap::image(PointSet s) const
{
    PointSet out = PointSet::empty(target);
    s.for_each([&](Point x) { out.insert(values[x]); });
    return out;
}

Relation PointMap::image(const Relation& r) const
{
    Relation out(target);
    for (auto [x, y] : r.pairs())
        out.insert(values[x], values[y]);
    return out;
}

Relation PointMap::preimage(const Relation& r) const
{
    Relation out(source);
    for (Point x = 0; x < source; ++x)
        for (Point y = 0; y < source; ++y)
            if (r.contains(values[x], values[y]))
                out.insert(x, y);
    return out;
}

PointMap PointMap::after(const PointMap& first) const
{
    if (first.target != source)
        throw PreconditionError("maps do not compose");
    std::vector<Point> v(first.source);
    for (Point x = 0; x < first.source; ++x)
        v[x] = values[first.values[x]];
    return PointMap(first.source, target, std::move(v));
}

bool is_precontinuous(const PointMap& h, const PreTopology& source, const PreTopology& target)
{
    if (h.source != source.size() || h.target != target.size())
        throw PreconditionError("map does not match the carriers");
    return std::all_of(target.opens().begin(), target.opens().end(),
                       [&](PointSet w) { return source.is_open(h.preimage(w)); });
}

// ---------------------------------------------------------------------------

bool is_t0(const PreTopology& tau)
{
    const unsigned n = tau.size();
    for (Point y = 0; y < n; ++y)
        for (Point z = y + 1; z < n; ++z) {
            bool found = std::any_of(tau.opens().begin(), tau.opens().end(),
                                     [&](PointSet w) { return w.contains(y) != w.contains(z); });
            if (!found)
                return false;
        }
    return true;
}

bool is_t1(const PreTopology& tau)
{
    const unsigned n = tau.size();
    for (Point y = 0; y < n; ++y)
        for (Point z = 0; z < n; ++z) {
            if (y == z)
                continue;
            bool found = std::any_of(tau.opens().begin(), tau.opens().end(),
                                     [&](PointSet v) { return v.contains(y) && !v.contains(z); });
            if (!found)
                return false;
        }
    return true;
}

bool is_hausdorff(const PreTopology& tau)
{
    const unsigned n = tau.size();
    for (Point y = 0; y < n; ++y)
        for (Point z = y + 1; z < n; ++z) {
            bool found = false;
            for (PointSet v : tau.minimal_open_neighborhoods(y))
                if (tau.interior(v.complement()).contains(z)) {
                    found = true;
                    break;
                }
            if (!found)
                return false;
        }
    return true;
}

bool is_regular(const PreTopology& tau)
{
    if (!is_t1(tau))
        return false;
    const unsigned n = tau.size();
    const auto closed = tau.closed_sets();
    for (Point z = 0; z < n; ++z) {
        const auto nbhds = tau.minimal_open_neighborhoods(z);
        for (PointSet a : closed) {
            if (a.contains(z))
                continue;
            bool found = std::any_of(nbhds.begin(), nbhds.end(),
                                     [&](PointSet v) { return a.subset_of(tau.interior(v.complement())); });
            if (!found)
                return false;
        }
    }
    return true;
}

std::vector<PointSet> clopen_sets(const PreTopology& tau)
{
    std::vector<PointSet> out;
    for (PointSet o : tau.opens())
        if (tau.is_open(o.complement()))
            out.push_back(o);
    return out;
}

bool is_completely_regular(const PreTopology& tau)
{
    if (!is_t1(tau))
        return false;
    const unsigned n = tau.size();
    const auto clopens = clopen_sets(tau);
    for (Point z = 0; z < n; ++z)
        for (PointSet c : tau.closed_sets()) {
            if (c.contains(z))
                continue;
            bool found = std::any_of(clopens.begin(), clopens.end(),
                                     [&](PointSet a) { return a.contains(z) && !a.meets(c); });
            if (!found)
                return false;
        }
    return true;
}

std::optional<std::pair<PointSet, PointSet>> normality_counterexample(const PreTopology& tau)
{
    const auto closed = tau.closed_sets();
    for (PointSet a : closed)
        for (PointSet b : closed) {
            if (a.meets(b) || b < a)
                continue;
            bool found = false;
            for (PointSet u : tau.opens()) {
                if (a.subset_of(u) && b.subset_of(tau.interior(u.complement()))) {
                    found = true;
                    break;
                }
            }
            if (!found)
                return std::make_pair(a, b);
        }
    return std::nullopt;
}

bool is_normal(const PreTopology& tau)
{
    return !normality_counterexample(tau).has_value();
}

SeparationProfile separation_profile(const PreTopology& tau)
{
    SeparationProfile p;
    p.t0 = is_t0(tau);
    p.t1 = p.t0 && is_t1(tau);
    p.t2 = p.t1 && is_hausdorff(tau);
    p.regular = p.t1 && is_regular(tau);
    p.completely_regular = p.t1 && is_completely_regular(tau);
    p.normal = is_normal(tau);
    return p;
}

// ---------------------------------------------------------------------------

PreTopology product_pretopology(const PreTopology& left, const PreTopology& right)
{
    const unsigned m = right.size();
    std::vector<PointSet> boxes;
    for (PointSet u : left.opens())
        for (PointSet v : right.opens())
            if (!u.is_empty() && !v.is_empty())
                boxes.push_back(box(u, v, m));
    return PreTopology::generate(left.carrier().product(right.carrier()), boxes);
}

PointSet product_interior(const PreTopology& left, const PreTopology& right, PointSet s)
{
    const unsigned n = left.size();
    const unsigned m = right.size();
    if (s.universe() != n * m)
        throw PreconditionError("subset does not live on the product carrier");
    std::vector<std::vector<PointSet>> left_nb(n), right_nb(m);
    for (Point x = 0; x < n; ++x)
        left_nb[x] = left.minimal_open_neighborhoods(x);
    for (Point y = 0; y < m; ++y)
        right_nb[y] = right.minimal_open_neighborhoods(y);

    PointSet out = PointSet::empty(n * m);
    s.for_each([&](Point p) {
        if (out.contains(p))
            return;
        const Point x = p / m, y = p % m;
        for (PointSet u : left_nb[x])
            for (PointSet v : right_nb[y]) {
                PointSet b = box(u, v, m);
                if (b.subset_of(s)) {
                    out |= b;
                    return;
                }
            }
    });
    return out;
}

bool is_open_in_product(const PreTopology& left, const PreTopology& right, PointSet s)
{
    return product_interior(left, right, s) == s;
}

PointSet product_closure(const PreTopology& left, const PreTopology& right, PointSet s)
{
    return product_interior(left, right, s.complement()).complement();
}

} // namespace prelab
