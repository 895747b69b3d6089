#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

#include "prelab/metrics.hpp"
#include "prelab/preprox.hpp"
#include "prelab/preunif.hpp"

using namespace prelab;

namespace {

struct Flags
{
    bool u2, u3, u5, u6, u2sym, u3strong;
};

// The axioms read literally on the full up-closure of `basis`.
Flags brute_axioms(unsigned n, const std::vector<Relation>& basis)
{
    std::vector<Relation> mu;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
        const Relation r = Relation::from_code(n, code);
        for (const Relation& b : basis)
            if (b.subset_of(r)) {
                mu.push_back(r);
                break;
            }
    }
    auto in_mu = [&](const Relation& r) { return std::find(mu.begin(), mu.end(), r) != mu.end(); };
    Flags f{true, true, true, true, true, true};
    Relation meet = Relation::full(n);
    for (const Relation& u : mu) {
        meet = meet & u;
        f.u2 &= in_mu(u.inverse());
        bool u3 = false, sym = false, strong = false;
        for (const Relation& v : mu) {
            sym |= v.subset_of(u) && v.is_symmetric();
            strong |= v.compose(v).subset_of(u);
            for (const Relation& w : mu)
                u3 |= v.compose(w).subset_of(u);
            f.u6 &= in_mu(u & v);
        }
        f.u3 &= u3;
        f.u2sym &= sym;
        f.u3strong &= strong;
    }
    f.u5 = meet == Relation::diagonal(n);
    return f;
}

void check_against_brute(unsigned n, const std::vector<Relation>& basis)
{
    const AxiomReport rep = check_axioms(Carrier::lettered(n), basis);
    const Flags f = brute_axioms(n, basis);
    CHECK(rep[Axiom::U1].holds);
    CHECK(rep[Axiom::U2].holds == f.u2);
    CHECK(rep[Axiom::U3].holds == f.u3);
    CHECK(rep[Axiom::U5].holds == f.u5);
    CHECK(rep[Axiom::U6].holds == f.u6);
    CHECK(rep[Axiom::U2Sym].holds == f.u2sym);
    CHECK(rep[Axiom::U3Strong].holds == f.u3strong);
    CHECK(rep.is_preuniformity == (f.u2 && f.u3 && f.u5));

    const AxiomFlags fast = basis_flags(n, basis);
    CHECK(fast.u2 == f.u2);
    CHECK(fast.u3 == f.u3);
    CHECK(fast.u5 == f.u5);
    CHECK(fast.u6 == f.u6);
    CHECK(fast.u2sym == f.u2sym);
    CHECK(fast.u3strong == f.u3strong);
}

// G open iff every x in G has a basis U with U[x] inside G.
std::vector<PointSet> brute_tau(const PreUniformity& mu)
{
    const unsigned n = mu.size();
    const std::vector<Relation> members = mu.members();
    std::vector<PointSet> out;
    for (PointSet g : all_subsets(n)) {
        bool open = true;
        g.for_each([&](Point x) {
            bool some = false;
            for (const Relation& u : members)
                some |= u.section(x).subset_of(g);
            open &= some;
        });
        if (open)
            out.push_back(g);
    }
    return out;
}

std::vector<Relation> example_basis()
{
    return {Relation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {2, 0}}),
            Relation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}, {2, 1}})};
}

} // namespace

TEST_SUITE("preunif")
{
    TEST_CASE("axioms of small families")
    {
        const AxiomReport d = check_axioms(Carrier::lettered(3), {Relation::diagonal(3)});
        CHECK(d.uniform);
        CHECK(d.classification() == "uniform");

        const AxiomReport ex = check_axioms(Carrier::lettered(3), example_basis());
        CHECK(ex[Axiom::U1].holds);
        CHECK(ex[Axiom::U2].holds);
        CHECK(ex[Axiom::U5].holds);
        CHECK_FALSE(ex[Axiom::U3].holds);
        for (const Relation& a : example_basis())
            for (const Relation& b : example_basis())
                CHECK(a.compose(b) == Relation::full(3));

        const PreUniformity s = fixtures::strong_two_point();
        CHECK(s.valid());
        CHECK(s.report().strong);
        CHECK_FALSE(s.report().symmetric);
    }

    TEST_CASE("axioms against the literal definitions")
    {
        // Every family of entourages on at most two points.
        for (unsigned n = 1; n <= 2; ++n) {
            std::vector<Relation> ents;
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
                const Relation r = Relation::from_code(n, code);
                if (r.contains_diagonal())
                    ents.push_back(r);
            }
            for (std::uint64_t fam = 1; fam < (std::uint64_t{1} << ents.size()); ++fam) {
                std::vector<Relation> basis;
                for (std::size_t i = 0; i < ents.size(); ++i)
                    if ((fam >> i) & 1)
                        basis.push_back(ents[i]);
                check_against_brute(n, basis);
            }
        }
        std::mt19937_64 rng(11);
        for (int i = 0; i < 300; ++i) {
            std::vector<Relation> basis;
            const int k = 1 + i % 4;
            for (int j = 0; j < k; ++j)
                basis.push_back(oracle::random_entourage(3, rng, 0.3));
            check_against_brute(3, basis);
        }
        for (int i = 0; i < 100; ++i)
            check_against_brute(3, random_preuniformity(3, rng).basis());
    }

    TEST_CASE("membership")
    {
        const PreUniformity ex(Carrier::lettered(3), example_basis());
        CHECK(ex.contains(Relation::full(3)));
        CHECK_FALSE(ex.contains(Relation::diagonal(3)));
        CHECK(PreUniformity::discrete(Carrier::lettered(3)).contains(Relation::diagonal(3)));
    }

    TEST_CASE("induced pre-topology")
    {
        const PreUniformity ex(Carrier::lettered(3), example_basis());
        const PreTopology t = induced_pretopology(ex);
        CHECK(t.opens() == std::vector<PointSet>{PointSet(3, 0), PointSet(3, 3), PointSet(3, 5), PointSet(3, 6),
                                                 PointSet(3, 7)});
        CHECK_FALSE(t.is_discrete());
        CHECK(induced_pretopology(PreUniformity::discrete(Carrier::lettered(3))).is_discrete());
        CHECK(induced_pretopology(PreUniformity(Carrier::lettered(2), {Relation::full(2)})).opens().size() == 2);

        std::mt19937_64 rng(12);
        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n))
                CHECK(induced_pretopology(mu).opens() == brute_tau(mu));
        for (int i = 0; i < 50; ++i) {
            const PreUniformity mu = random_preuniformity(4, rng);
            CHECK(induced_pretopology(mu).opens() == brute_tau(mu));
        }
    }

    TEST_CASE("neighbourhood pre-base")
    {
        const PreUniformity s = fixtures::strong_two_point();
        const auto nb = neighborhood_prebase(s, 0);
        CHECK(nb == std::vector<PointSet>{PointSet(2, 3), PointSet(2, 1)});
        CHECK(neighborhood_prebase(PreUniformity::discrete(Carrier::lettered(2)), 1) ==
              std::vector<PointSet>{PointSet(2, 2)});
    }

    TEST_CASE("entourage pre-bases")
    {
        const auto [closed, open] = entourage_prebase_verdicts(PreUniformity::discrete(Carrier::lettered(3)));
        CHECK(closed);
        CHECK(open);
        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n)) {
                const EntouragePrebases e = entourage_prebases(mu);
                CHECK(e.closed_is_prebase);
                CHECK(e.open_is_prebase);
            }
    }

    TEST_CASE("T0 criterion")
    {
        CHECK(t0_criterion(PreUniformity(Carrier::lettered(2), {Relation::full(2)})) == std::pair{false, false});
        CHECK(t0_criterion(PreUniformity::discrete(Carrier::lettered(2))) == std::pair{true, true});
        // Every up-closed family on at most three points satisfying U2 and U3.
        std::mt19937_64 rng(13);
        for (int i = 0; i < 400; ++i) {
            const unsigned n = 1 + i % 3;
            std::vector<Relation> basis;
            for (int j = 0; j < 1 + i % 3; ++j) {
                Relation r = oracle::random_entourage(n, rng, 0.5);
                // transitive and symmetric members satisfy U2 and U3 on their own
                r = r | r.inverse();
                for (unsigned k = 0; k < n; ++k)
                    r = r | r.compose(r);
                basis.push_back(r);
            }
            const auto [t0, meet] = t0_criterion(PreUniformity(Carrier::lettered(n), basis));
            CHECK(t0 == meet);
        }
    }

    TEST_CASE("weight, comparison and sup")
    {
        CHECK(weight(PreUniformity::discrete(Carrier::lettered(3))) == 1);
        const PreUniformity s = fixtures::strong_two_point();
        CHECK(weight(s) == 2);
        CHECK(weight(sup({s, s})) == 2);
        CHECK(sup({s}) == s);
        const PreUniformity d = PreUniformity::discrete(Carrier::lettered(2));
        CHECK(sup({d, s}) == d);
        CHECK(compare(d, s) == Comparison::Finer);
        CHECK(compare(s, s) == Comparison::Equal);

        for (unsigned n = 1; n <= 3; ++n) {
            const auto all = fixtures::valid_preuniformities(n);
            for (const PreUniformity& a : all)
                for (const PreUniformity& b : all) {
                    if (is_subfamily(b, a)) {
                        const auto ta = induced_pretopology(a).opens(), tb = induced_pretopology(b).opens();
                        for (PointSet g : tb)
                            CHECK(std::find(ta.begin(), ta.end(), g) != ta.end());
                    }
                    const PreUniformity j = sup({a, b});
                    CHECK(is_subfamily(a, j));
                    CHECK(is_subfamily(b, j));
                    for (const PreUniformity& c : all)
                        if (is_subfamily(a, c) && is_subfamily(b, c))
                            CHECK(is_subfamily(j, c));
                }
        }
    }

    TEST_CASE("generation from a pre-base")
    {
        CHECK(generate_from_prebase(Carrier::lettered(3), {Relation::diagonal(3)}).mu ==
              PreUniformity::discrete(Carrier::lettered(3)));
        CHECK_THROWS_AS(generate_from_prebase(Carrier::lettered(3), example_basis()), AxiomError);
        try {
            generate_from_prebase(Carrier::lettered(3), example_basis());
        } catch (const AxiomError& e) {
            CHECK(e.stage().find("BU2") != std::string::npos);
        }
        CHECK(generate_from_prebase(Carrier::lettered(2), fixtures::strong_two_point().basis()).mu.report().strong);
    }

    TEST_CASE("covers")
    {
        const Cover singles = cover_of(Relation::diagonal(3));
        CHECK(singles == Cover{PointSet(3, 1), PointSet(3, 2), PointSet(3, 4)});
        CHECK(star(PointSet(3, 2), singles) == PointSet(3, 2));
        CHECK(generate_from_covers(Carrier::lettered(3), {singles}).mu == PreUniformity::discrete(Carrier::lettered(3)));
        CHECK_FALSE(uc_check(2, {Cover{PointSet::full(2)}}).holds());
        CHECK_THROWS_AS(generate_from_covers(Carrier::lettered(2), {Cover{PointSet::full(2)}}), AxiomError);

        std::mt19937_64 rng(14);
        for (int i = 0; i < 200; ++i) {
            const unsigned n = 2 + i % 3;
            const PreUniformity mu = random_preuniformity(n, rng);
            if (!mu.report().strong)
                continue;
            for (const Relation& v : mu.basis())
                for (const Relation& w : mu.members())
                    if (w.is_symmetric() && w.compose(w).compose(w).subset_of(v))
                        CHECK(is_star_refinement(cover_of(w), cover_of(v)));
        }
        for (int i = 0; i < 100; ++i) {
            Cover c;
            PointSet seen(4, 0);
            while (!seen.is_full()) {
                const PointSet b(4, rng() & 15);
                if (b.is_empty())
                    continue;
                c.push_back(b);
                seen |= b;
            }
            CHECK(cover_relation(c).is_symmetric());
        }
    }

    TEST_CASE("generation from pseudometrics")
    {
        const Carrier c = Carrier::lettered(3);
        CHECK(generate_from_pseudometrics({Pseudometric::discrete(c)}) == PreUniformity::discrete(c));
        CHECK_THROWS_AS(generate_from_pseudometrics({Pseudometric::zero(Carrier::lettered(2))}), AxiomError);
    }

    TEST_CASE("continuity")
    {
        for (unsigned n = 1; n <= 2; ++n) {
            const auto all = fixtures::valid_preuniformities(n);
            for (const PreUniformity& mu : all) {
                CHECK(is_preuniformly_continuous(PointMap::identity(n), mu, mu));
                for (const PreUniformity& nu : all)
                    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n * n); ++code) {
                        std::vector<Point> v;
                        for (unsigned x = 0; x < n; ++x)
                            v.push_back((code >> (x * n)) % n);
                        const PointMap f(n, n, v);
                        if (is_preuniformly_continuous(f, mu, nu))
                            CHECK(is_precontinuous(f, induced_pretopology(mu), induced_pretopology(nu)));
                    }
            }
        }
    }

    TEST_CASE("compact Hausdorff coreflection does not force uniform continuity")
    {
        // tau(mu*) is discrete, the identity is pre-continuous, yet the
        // diagonal of the discrete target has no preimage in mu.
        const PreUniformity mu = fixtures::strong_two_point();
        const PreUniformity nu = PreUniformity::discrete(mu.carrier());
        CHECK(is_hausdorff(induced_pretopology(coreflection(mu).star)));
        CHECK(is_precontinuous(PointMap::identity(2), induced_pretopology(mu), induced_pretopology(nu)));
        CHECK_FALSE(is_preuniformly_continuous(PointMap::identity(2), mu, nu));
    }

    TEST_CASE("coreflection")
    {
        const PreUniformity d = PreUniformity::discrete(Carrier::lettered(3));
        CHECK(coreflection(d).star == d);
        CHECK(coreflection(fixtures::strong_two_point()).star == PreUniformity::discrete(Carrier::lettered(2)));
        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n)) {
                const Coreflection r = coreflection(mu);
                CHECK(r.intersection_equivalence);
                CHECK(r.star.report().uniform);
                // intersections of basis members, brute force
                std::vector<Relation> meets;
                const auto& b = mu.basis();
                for (std::uint64_t s = 1; s < (std::uint64_t{1} << b.size()); ++s) {
                    Relation m = Relation::full(n);
                    for (std::size_t i = 0; i < b.size(); ++i)
                        if ((s >> i) & 1)
                            m = m & b[i];
                    meets.push_back(m);
                }
                CHECK(r.star == PreUniformity(mu.carrier(), meets));
            }
    }

    TEST_CASE("products")
    {
        const PreUniformity d = PreUniformity::discrete(Carrier::lettered(2));
        CHECK(product(d, d).product_coreflection == PreUniformity::discrete(Carrier::lettered(2).product(Carrier::lettered(2))));
        for (unsigned n1 = 1; n1 <= 2; ++n1)
            for (unsigned n2 = 1; n2 <= 2; ++n2)
                for (const PreUniformity& a : fixtures::valid_preuniformities(n1))
                    for (const PreUniformity& b : fixtures::valid_preuniformities(n2))
                        CHECK(product(a, b).projections_uniformly_continuous);
    }

    TEST_CASE("total boundedness")
    {
        const PreUniformity d = PreUniformity::discrete(Carrier::lettered(3));
        CHECK(totally_bounded(d).totally_bounded);
        CHECK(totally_bounded(d).dense_sets.front().second == PointSet::full(3));
        CHECK(square_cover(d, Relation::diagonal(3)) == Cover{PointSet(3, 1), PointSet(3, 2), PointSet(3, 4)});
        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n)) {
                CHECK(totally_bounded(mu).totally_bounded);
                if (mu.report().strong)
                    for (const Relation& u : mu.basis())
                        CHECK(square_cover(mu, u).has_value());
            }
    }

    TEST_CASE("universal pre-uniformity")
    {
        const Carrier ab = Carrier::lettered(2);
        const UniversalResult r = universal_preuniformity(PreTopology::discrete(ab), 3);
        REQUIRE(r.mu);
        CHECK(*r.mu == PreUniformity::discrete(ab));
        CHECK(r.compatible_found == 2);
        CHECK(r.union_compatible);
        CHECK_THROWS_AS(universal_preuniformity(PreTopology::indiscrete(ab), 3), AxiomError);
    }

    TEST_CASE("induced pre-proximity")
    {
        const PreUniformity s = fixtures::strong_two_point();
        const PreProximity delta = delta_from_preuniformity(s);
        CHECK(delta.far(PointSet(2, 1), PointSet(2, 2)));
        CHECK(delta_from_preuniformity(PreUniformity::discrete(Carrier::lettered(3))) ==
              PreProximity::discrete(Carrier::lettered(3)));
        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n)) {
                const PreProximity d = delta_from_preuniformity(mu);
                for (PointSet a : all_subsets(n))
                    for (PointSet b : all_subsets(n)) {
                        bool near = true;
                        for (const Relation& u : mu.basis())
                            near &= u.meets(Relation::rectangle(a, b));
                        CHECK(d.near(a, b) == near);
                    }
                CHECK(check_pp_axioms(d).is_preproximity());
                CHECK(induced_pretopology(d) == induced_pretopology(mu));
            }
    }
}
