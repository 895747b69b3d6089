#include "prelab/groups.hpp"

#include <algorithm>

namespace prelab {

GroupTable GroupTable::from_table(Carrier carrier, std::vector<std::vector<Point>> mul)
{
    const unsigned n = carrier.size();
    if (mul.size() != n)
        throw PreconditionError("invalid table: wrong number of rows");
    for (const auto& row : mul) {
        if (row.size() != n)
            throw PreconditionError("invalid table: wrong row length");
        for (Point v : row)
            if (v >= n)
                throw PreconditionError("invalid table: entry out of range");
    }
    for (Point x = 0; x < n; ++x)
        for (Point y = 0; y < n; ++y)
            for (Point z = 0; z < n; ++z)
                if (mul[mul[x][y]][z] != mul[x][mul[y][z]])
                    throw PreconditionError("invalid table: not associative at (" + carrier.label(x) + "," +
                                            carrier.label(y) + "," + carrier.label(z) + ")");
    std::optional<Point> e;
    for (Point x = 0; x < n && !e; ++x) {
        bool ident = true;
        for (Point y = 0; y < n; ++y)
            ident = ident && mul[x][y] == y && mul[y][x] == y;
        if (ident)
            e = x;
    }
    if (!e)
        throw PreconditionError("invalid table: no identity");
    std::vector<Point> inv(n);
    for (Point x = 0; x < n; ++x) {
        bool found = false;
        for (Point y = 0; y < n && !found; ++y)
            if (mul[x][y] == *e && mul[y][x] == *e) {
                inv[x] = y;
                found = true;
            }
        if (!found)
            throw PreconditionError("invalid table: " + carrier.label(x) + " has no inverse");
    }
    return GroupTable{std::move(carrier), std::move(mul), std::move(inv), *e};
}

GroupTable GroupTable::cyclic(unsigned n)
{
    std::vector<std::string> labels;
    for (unsigned i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    std::vector<std::vector<Point>> mul(n, std::vector<Point>(n));
    for (Point x = 0; x < n; ++x)
        for (Point y = 0; y < n; ++y)
            mul[x][y] = (x + y) % n;
    return from_table(Carrier(std::move(labels)), std::move(mul));
}

GroupTable GroupTable::klein()
{
    std::vector<std::vector<Point>> mul(4, std::vector<Point>(4));
    for (Point x = 0; x < 4; ++x)
        for (Point y = 0; y < 4; ++y)
            mul[x][y] = x ^ y;
    return from_table(Carrier({"e", "a", "b", "c"}), std::move(mul));
}

GroupTable GroupTable::symmetric3()
{
    const auto perms = all_permutations(3);
    std::vector<std::string> labels;
    for (const auto& p : perms)
        labels.push_back(std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]));
    const unsigned n = static_cast<unsigned>(perms.size());
    std::vector<std::vector<Point>> mul(n, std::vector<Point>(n));
    for (Point x = 0; x < n; ++x)
        for (Point y = 0; y < n; ++y) {
            std::vector<Point> c(3);
            for (unsigned i = 0; i < 3; ++i)
                c[i] = perms[x][perms[y][i]];
            mul[x][y] = static_cast<Point>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return from_table(Carrier(std::move(labels)), std::move(mul));
}

PointSet GroupTable::translate(Point x, PointSet u) const
{
    PointSet out = PointSet::empty(size());
    u.for_each([&](Point y) { out.insert(mul[x][y]); });
    return out;
}

PointSet GroupTable::inverse(PointSet u) const
{
    PointSet out = PointSet::empty(size());
    u.for_each([&](Point y) { out.insert(inv[y]); });
    return out;
}

PointSet GroupTable::product(PointSet u, PointSet v) const
{
    PointSet out = PointSet::empty(size());
    u.for_each([&](Point x) { v.for_each([&](Point y) { out.insert(mul[x][y]); }); });
    return out;
}

std::vector<GroupTable> small_groups()
{
    return {GroupTable::cyclic(1), GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::cyclic(4), GroupTable::klein()};
}

std::optional<std::string> pretopological_group_violation(const GroupTable& g, const PreTopology& tau)
{
    const unsigned n = g.size();
    if (tau.size() != n)
        throw PreconditionError("pre-topology lives on a different carrier");
    if (n * n > kMaxPoints)
        throw CeilingError("group too large for the product pre-topology");
    for (PointSet w : tau.opens()) {
        PointSet pre = PointSet::empty(n * n);
        for (Point x = 0; x < n; ++x)
            for (Point y = 0; y < n; ++y)
                if (w.contains(g(x, y)))
                    pre.insert(x * n + y);
        if (!is_open_in_product(tau, tau, pre))
            return "multiplication: preimage of " + format_set(g.carrier, w) + " is not open in G x G";
        if (!tau.is_open(g.inverse(w)))
            return "inversion: preimage of " + format_set(g.carrier, w) + " is not open";
    }
    return std::nullopt;
}

bool is_pretopological_group(const GroupTable& g, const PreTopology& tau)
{
    return !pretopological_group_violation(g, tau).has_value();
}

bool is_strongly_pretopological_group(const GroupTable& g, const PreTopology& tau, const std::vector<PointSet>& base)
{
    for (PointSet b : base) {
        if (b.universe() != g.size() || !tau.is_open(b))
            throw PreconditionError("base member " + format_set(g.carrier, b) + " is not open");
        if (!b.contains(g.e))
            throw PreconditionError("base member " + format_set(g.carrier, b) + " misses the identity");
    }
    if (base.empty() || !is_pretopological_group(g, tau))
        return false;
    for (PointSet o : tau.opens())
        if (o.contains(g.e) && std::none_of(base.begin(), base.end(), [&](PointSet b) { return b.subset_of(o); }))
            return false;
    for (PointSet b : base)
        if (g.inverse(b) != b)
            return false;
    return std::all_of(base.begin(), base.end(), [&](PointSet u) {
        return std::any_of(base.begin(), base.end(), [&](PointSet v) { return g.product(v, v).subset_of(u); });
    });
}

GroupPipeline group_preuniformity(const GroupTable& g, const PreTopology& tau, const std::vector<PointSet>& base)
{
    if (!is_strongly_pretopological_group(g, tau, base))
        throw AxiomError("strongly pre-topological group", "the base does not satisfy the definition");
    std::vector<Cover> covers;
    for (PointSet u : base) {
        Cover c;
        for (Point x = 0; x < g.size(); ++x)
            c.push_back(g.translate(x, u));
        covers.push_back(std::move(c));
    }
    const UcReport uc = uc_check(g.size(), covers);
    if (!uc.holds())
        throw AxiomError("uniform covers", uc.witness);
    GeneratedPreUniformity gen = generate_from_covers(g.carrier, covers, &tau);
    const bool strong = gen.mu.report().strong;
    if (!strong)
        throw AxiomError("strong pre-uniformity", "generated family is not strong: " + gen.mu.report().classification());
    const bool induces = *gen.induces_target;
    if (!induces)
        throw AxiomError("induced pre-topology", "tau(mu) differs from the group pre-topology");
    const bool cr = is_completely_regular(tau);
    if (!cr)
        throw AxiomError("complete regularity", "the group pre-topology is not completely regular");
    return GroupPipeline{std::move(covers), uc, std::move(gen.mu), strong, induces, cr};
}

} // namespace prelab
