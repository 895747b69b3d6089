#include "doctest.h"
#include "oracle.hpp"

#include "prelab/pretop.hpp"
#include "prelab/search.hpp"

using namespace prelab;

namespace {

const Carrier abc = Carrier::lettered(3);

PreTopology triangle()
{
    return PreTopology::generate(abc, {PointSet::of(3, {0, 1}), PointSet::of(3, {1, 2}), PointSet::of(3, {0, 2})});
}

std::vector<std::uint64_t> masks(const PreTopology& t)
{
    std::vector<std::uint64_t> out;
    for (PointSet s : t.opens())
        out.push_back(s.bits());
    return out;
}

} // namespace

TEST_SUITE("pretop")
{
    TEST_CASE("generate")
    {
        CHECK(masks(triangle()) == std::vector<std::uint64_t>{0, 3, 5, 6, 7});
        std::vector<PointSet> singles;
        for (Point x = 0; x < 3; ++x)
            singles.push_back(PointSet::singleton(3, x));
        CHECK(PreTopology::generate(abc, singles).is_discrete());
        CHECK(masks(PreTopology::generate(abc, {PointSet::full(3)})) == std::vector<std::uint64_t>{0, 7});
    }

    TEST_CASE("is_pretopology")
    {
        CHECK(is_pretopology(2, {PointSet(2, 0), PointSet(2, 1), PointSet(2, 3)}));
        CHECK_FALSE(is_pretopology(2, {PointSet(2, 1), PointSet(2, 2)}));
        CHECK(is_pretopology(2, {PointSet(2, 0), PointSet(2, 1), PointSet(2, 2), PointSet(2, 3)}));
        // Against the brute-force family filter.
        for (unsigned n = 1; n <= 3; ++n) {
            std::size_t count = 0;
            for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << (1u << n)); ++fam) {
                std::vector<PointSet> family;
                for (unsigned a = 0; a < (1u << n); ++a)
                    if ((fam >> a) & 1)
                        family.push_back(PointSet(n, a));
                count += is_pretopology(n, family);
            }
            CHECK(count == oracle::all_pretopologies(n).size());
        }
    }

    TEST_CASE("closure and interior")
    {
        const PreTopology t = triangle();
        CHECK(t.closure(PointSet(3, 0)) == PointSet(3, 0));
        CHECK(t.closure(PointSet::full(3)) == PointSet::full(3));
        CHECK(t.closure(PointSet::of(3, {0})) == PointSet::of(3, {0}));
        CHECK(t.closure(PointSet::of(3, {0, 1})) == PointSet::full(3));
        CHECK(t.interior(PointSet::of(3, {0, 1})) == PointSet::of(3, {0, 1}));
        CHECK(t.interior(PointSet::of(3, {0})) == PointSet(3, 0));
        CHECK(t.interior(PointSet::full(3)) == PointSet::full(3));

        for (unsigned n = 1; n <= 4; ++n)
            enumerate(StructureKind::Pretopology, n, {}, [&](AtomContext& c, const OrderKey&) {
                const auto& tau = std::get<PreTopology>(c.subject());
                for (PointSet b : all_subsets(n)) {
                    CHECK(tau.interior(b) == tau.closure(b.complement()).complement());
                    const PointSet cl = tau.closure(b);
                    CHECK(b.subset_of(cl));
                    CHECK(tau.closure(cl) == cl);
                    for (PointSet a : all_subsets(n))
                        if (a.subset_of(b))
                            CHECK(tau.closure(a).subset_of(cl));
                }
                CHECK(tau.closure(PointSet(n, 0)) == PointSet(n, 0));
                return true;
            });
    }

    TEST_CASE("precontinuity")
    {
        const PreTopology t = triangle();
        CHECK(is_precontinuous(PointMap::identity(3), t, t));
        CHECK(is_precontinuous(PointMap(3, 3, {1, 1, 1}), t, t));
        const Carrier ab = Carrier::lettered(2);
        const PreTopology s(ab, {PointSet(2, 0), PointSet(2, 1), PointSet(2, 3)});
        CHECK_FALSE(is_precontinuous(PointMap(2, 2, {1, 0}), s, s));
    }

    TEST_CASE("separation")
    {
        for (unsigned n = 1; n <= 3; ++n) {
            const SeparationProfile d = separation_profile(PreTopology::discrete(Carrier::lettered(n)));
            CHECK((d.t0 && d.t1 && d.t2 && d.regular && d.completely_regular && d.normal));
        }
        const SeparationProfile s = separation_profile(triangle());
        CHECK(s.t0);
        CHECK(s.t1);
        CHECK_FALSE(s.t2);
        CHECK_FALSE(s.regular);
        CHECK_FALSE(s.completely_regular);
        const SeparationProfile i = separation_profile(PreTopology::indiscrete(Carrier::lettered(2)));
        CHECK_FALSE((i.t0 || i.t1 || i.t2 || i.regular || i.completely_regular));
    }

    TEST_CASE("separation against brute force")
    {
        // T0, T1 and T2 straight from the definitions over opens.
        for (unsigned n = 1; n <= 3; ++n)
            for (const auto& opens : oracle::all_pretopologies(n)) {
                std::vector<PointSet> fam;
                for (auto m : opens)
                    fam.push_back(PointSet(n, m));
                const PreTopology tau(Carrier::lettered(n), fam);
                bool t0 = true, t1 = true, t2 = true;
                for (unsigned x = 0; x < n; ++x)
                    for (unsigned y = 0; y < n; ++y) {
                        if (x == y)
                            continue;
                        bool sep0 = false, sep1 = false, sep2 = false;
                        for (auto u : opens) {
                            const bool ux = (u >> x) & 1, uy = (u >> y) & 1;
                            sep0 |= ux != uy;
                            sep1 |= ux && !uy;
                            for (auto v : opens)
                                sep2 |= ux && ((v >> y) & 1) && !(u & v);
                        }
                        t0 &= sep0;
                        t1 &= sep1;
                        t2 &= sep2;
                    }
                CHECK(is_t0(tau) == t0);
                CHECK(is_t1(tau) == t1);
                CHECK(is_hausdorff(tau) == t2);
            }
    }

    TEST_CASE("products")
    {
        const Carrier ab = Carrier::lettered(2);
        CHECK(product_pretopology(PreTopology::discrete(ab), PreTopology::discrete(ab)).is_discrete());
        const PreTopology ind = PreTopology::indiscrete(ab);
        const PreTopology s(ab, {PointSet(2, 0), PointSet(2, 1), PointSet(2, 3)});
        const PreTopology p = product_pretopology(ind, s);
        // {empty} together with X x V for V open.
        CHECK(p.opens().size() == 3);
        for (unsigned n1 = 1; n1 <= 2; ++n1)
            for (unsigned n2 = 1; n2 <= 2; ++n2)
                for (const auto& o1 : oracle::all_pretopologies(n1))
                    for (const auto& o2 : oracle::all_pretopologies(n2)) {
                        std::vector<PointSet> f1, f2;
                        for (auto m : o1)
                            f1.push_back(PointSet(n1, m));
                        for (auto m : o2)
                            f2.push_back(PointSet(n2, m));
                        const PreTopology t1(Carrier::lettered(n1), f1), t2(Carrier::lettered(n2), f2);
                        const PreTopology prod = product_pretopology(t1, t2);
                        std::vector<Point> first, second;
                        for (unsigned x = 0; x < n1; ++x)
                            for (unsigned y = 0; y < n2; ++y) {
                                first.push_back(x);
                                second.push_back(y);
                            }
                        CHECK(is_precontinuous(PointMap(n1 * n2, n1, first), prod, t1));
                        CHECK(is_precontinuous(PointMap(n1 * n2, n2, second), prod, t2));
                    }
    }
}
