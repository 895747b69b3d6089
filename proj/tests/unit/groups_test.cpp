#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

#include "prelab/groups.hpp"

using namespace prelab;

namespace {

// A subset of G x G is open in the box pre-topology iff each of its points
// lies in an open box inside it.
bool brute_pretopological_group(const GroupTable& g, const PreTopology& tau)
{
    const unsigned n = g.size();
    for (PointSet w : tau.opens()) {
        PointSet inv(n, 0);
        for (Point x = 0; x < n; ++x)
            if (w.contains(g.inv[x]))
                inv.insert(x);
        if (!tau.is_open(inv))
            return false;
        for (Point x = 0; x < n; ++x)
            for (Point y = 0; y < n; ++y) {
                if (!w.contains(g(x, y)))
                    continue;
                bool boxed = false;
                for (PointSet u : tau.opens())
                    for (PointSet v : tau.opens()) {
                        if (!u.contains(x) || !v.contains(y))
                            continue;
                        bool inside = true;
                        u.for_each([&](Point a) { v.for_each([&](Point b) { inside &= w.contains(g(a, b)); }); });
                        boxed |= inside;
                    }
                if (!boxed)
                    return false;
            }
    }
    return true;
}

PreTopology from_masks(unsigned n, const std::vector<std::uint64_t>& masks)
{
    std::vector<PointSet> opens;
    for (auto m : masks)
        opens.push_back(PointSet(n, m));
    return PreTopology(Carrier::lettered(n), opens);
}

PreTopology coset_z4()
{
    return PreTopology::generate(Carrier::lettered(4), {PointSet::of(4, {0, 2}), PointSet::of(4, {1, 3})});
}

} // namespace

TEST_SUITE("groups")
{
    TEST_CASE("tables")
    {
        for (const GroupTable& g : small_groups()) {
            const unsigned n = g.size();
            for (Point x = 0; x < n; ++x) {
                CHECK(g(x, g.e) == x);
                CHECK(g(x, g.inv[x]) == g.e);
                for (Point y = 0; y < n; ++y)
                    for (Point z = 0; z < n; ++z)
                        CHECK(g(g(x, y), z) == g(x, g(y, z)));
            }
        }
        CHECK(small_groups().size() == 5);
        CHECK_THROWS_AS(GroupTable::from_table(Carrier::lettered(2), {{0, 1}, {0, 1}}), PreconditionError);
        CHECK(GroupTable::symmetric3().size() == 6);
    }

    TEST_CASE("pre-topological groups")
    {
        for (const GroupTable& g : small_groups())
            CHECK(is_pretopological_group(g, PreTopology::discrete(g.carrier)));
        CHECK(is_pretopological_group(GroupTable::cyclic(4), coset_z4()));
        CHECK_FALSE(is_pretopological_group(GroupTable::cyclic(2), from_masks(2, {0, 1, 3})));

        for (const GroupTable& g : small_groups()) {
            if (g.size() > 3)
                continue;
            for (const auto& masks : oracle::all_pretopologies(g.size())) {
                const PreTopology tau = from_masks(g.size(), masks);
                CHECK(is_pretopological_group(g, tau) == brute_pretopological_group(g, tau));
            }
        }
    }

    TEST_CASE("translations are homeomorphisms")
    {
        for (const GroupTable& g : small_groups())
            for (const PreTopology& tau : fixtures::representatives<PreTopology>(StructureKind::Pretopology, g.size()))
                if (is_pretopological_group(g, tau))
                    for (Point a = 0; a < g.size(); ++a) {
                        std::vector<Point> left, back;
                        for (Point x = 0; x < g.size(); ++x) {
                            left.push_back(g(a, x));
                            back.push_back(g(g.inv[a], x));
                        }
                        CHECK(is_precontinuous(PointMap(g.size(), g.size(), left), tau, tau));
                        CHECK(is_precontinuous(PointMap(g.size(), g.size(), back), tau, tau));
                    }
    }

    TEST_CASE("strongly pre-topological groups")
    {
        const GroupTable z2 = GroupTable::cyclic(2);
        CHECK(is_strongly_pretopological_group(z2, PreTopology::discrete(z2.carrier), {PointSet::singleton(2, 0)}));
        CHECK(is_strongly_pretopological_group(GroupTable::cyclic(4), coset_z4(), {PointSet::of(4, {0, 2})}));
        const GroupTable z3 = GroupTable::cyclic(3);
        CHECK_FALSE(is_strongly_pretopological_group(z3, PreTopology::discrete(z3.carrier), {PointSet::of(3, {0, 1})}));
        CHECK_THROWS_AS(is_strongly_pretopological_group(GroupTable::cyclic(4), coset_z4(), {PointSet::of(4, {1, 3})}),
                        PreconditionError);
    }

    TEST_CASE("pipeline")
    {
        const GroupTable z2 = GroupTable::cyclic(2);
        const GroupPipeline p = group_preuniformity(z2, PreTopology::discrete(z2.carrier), {PointSet::singleton(2, 0)});
        CHECK(p.mu == PreUniformity::discrete(z2.carrier));
        CHECK(p.uc.holds());
        CHECK(p.completely_regular);

        const GroupTable s3 = GroupTable::symmetric3();
        const GroupPipeline q = group_preuniformity(s3, PreTopology::discrete(s3.carrier), {PointSet::singleton(6, s3.e)});
        CHECK(q.completely_regular);

        // The coset topology is not T1: 0 and 2 share a block of every
        // translate cover, so the pipeline stops at UC3.
        try {
            group_preuniformity(GroupTable::cyclic(4), coset_z4(), {PointSet::of(4, {0, 2})});
            FAIL("UC3 accepted");
        } catch (const AxiomError& e) {
            CHECK(e.witness().find("UC3") != std::string::npos);
        }
        const Relation blocks = Relation::rectangle(PointSet::of(4, {0, 2}), PointSet::of(4, {0, 2})) |
                                Relation::rectangle(PointSet::of(4, {1, 3}), PointSet::of(4, {1, 3}));
        CHECK(cover_relation({PointSet::of(4, {0, 2}), PointSet::of(4, {1, 3})}) == blocks);
    }
}
