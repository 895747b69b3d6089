#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

#include "prelab/metrics.hpp"

using namespace prelab;

namespace {

Rational R(long long p, long long q = 1)
{
    return Rational(p, q);
}

std::vector<std::vector<Rational>> random_metric(unsigned n, std::mt19937_64& rng)
{
    // Shortest paths over random edge weights in {1/4, ..., 4/4} give a metric.
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = x + 1; y < n; ++y)
            d[x][y] = d[y][x] = R(static_cast<long long>(1 + rng() % 4), 4);
    for (unsigned k = 0; k < n; ++k)
        for (unsigned x = 0; x < n; ++x)
            for (unsigned y = 0; y < n; ++y)
                if (d[x][k] + d[k][y] < d[x][y])
                    d[x][y] = d[x][k] + d[k][y];
    return d;
}

// f(x,y) = 2^-max{i : (x,y) in V_i}, then all-pairs shortest paths.
std::vector<std::vector<Rational>> brute_chain_metric(const EntourageChain& chain)
{
    const unsigned n = chain.carrier.size();
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    const std::size_t depth = chain.v.size() + 2;
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
            if (x == y)
                continue;
            std::size_t top = 0;
            bool always = true;
            for (std::size_t i = 0; i <= depth; ++i) {
                if (chain.at(i).contains(x, y))
                    top = i;
                else {
                    always = false;
                    break;
                }
            }
            d[x][y] = always ? Rational(0) : Rational(1, 1ll << top);
        }
    for (unsigned k = 0; k < n; ++k)
        for (unsigned x = 0; x < n; ++x)
            for (unsigned y = 0; y < n; ++y)
                if (d[x][k] + d[k][y] < d[x][y])
                    d[x][y] = d[x][k] + d[k][y];
    return d;
}

} // namespace

TEST_SUITE("metrics")
{
    TEST_CASE("rationals")
    {
        CHECK(parse_rational("3/6") == R(1, 2));
        CHECK(parse_rational("2") == R(2));
        CHECK(format_rational(R(1, 2)) == "1/2");
        CHECK_THROWS_AS(parse_rational("x"), PreconditionError);
    }

    TEST_CASE("pseudometric validation")
    {
        const Carrier c = Carrier::lettered(3);
        CHECK_NOTHROW(Pseudometric(c, {{R(0), R(1), R(2)}, {R(1), R(0), R(1)}, {R(2), R(1), R(0)}}));
        CHECK_THROWS_AS(Pseudometric(c, {{R(0), R(1), R(3)}, {R(1), R(0), R(1)}, {R(3), R(1), R(0)}}), PreconditionError);
        CHECK_THROWS_AS(Pseudometric(c, {{R(0), R(1), R(1)}, {R(2), R(0), R(1)}, {R(1), R(1), R(0)}}), PreconditionError);
    }

    TEST_CASE("pre-uniform pseudometrics")
    {
        const Carrier ab = Carrier::lettered(2);
        const PreUniformity s = fixtures::strong_two_point();
        CHECK(is_preuniform_pseudometric(Pseudometric::zero(ab), s));
        CHECK(is_preuniform_pseudometric(Pseudometric::discrete(ab), PreUniformity::discrete(ab)));
        CHECK_FALSE(is_preuniform_pseudometric(Pseudometric::discrete(ab), s));

        CHECK(pseudometric_precontinuity(Pseudometric::zero(ab), s));
        CHECK(pseudometric_precontinuity(Pseudometric::discrete(ab), PreUniformity::discrete(ab)));
        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n))
                for (const Pseudometric& rho : continuous_pseudometrics(induced_pretopology(mu)))
                    if (is_preuniform_pseudometric(rho, mu))
                        CHECK(pseudometric_precontinuity(rho, mu));
    }

    TEST_CASE("balls of a pseudometric")
    {
        const Carrier c = Carrier::lettered(3);
        CHECK(induced_from_pseudometric(Pseudometric::discrete(c)).report().uniform);
        const Pseudometric rho(c, {{R(0), R(1), R(2)}, {R(1), R(0), R(1)}, {R(2), R(1), R(0)}});
        CHECK(induced_from_pseudometric(rho).report().uniform);

        std::mt19937_64 rng(21);
        for (int i = 0; i < 1000; ++i) {
            const unsigned n = 1 + i % 5;
            const Pseudometric r(Carrier::lettered(n), random_metric(n, rng));
            CHECK(induced_from_pseudometric(r).report()[Axiom::U6].holds);
            for (int k = 0; k < 4; ++k) {
                const Relation big = r.ball(Rational(1, 1ll << k)), small = r.ball(Rational(1, 2ll << k));
                CHECK(small.compose(small).subset_of(big));
            }
        }
    }

    TEST_CASE("chain pseudometric")
    {
        const Carrier c = Carrier::lettered(4);
        const EntourageChain discrete{c, {Relation::full(4), Relation::diagonal(4)}};
        const ChainPseudometric d = chain_pseudometric(discrete);
        CHECK(d.sandwich);
        CHECK(d.rho == Pseudometric::discrete(c));

        const Relation v1 = Relation::diagonal(4) | Relation::from_pairs(4, {{0, 1}, {1, 0}});
        const ChainPseudometric p = chain_pseudometric({c, {Relation::full(4), v1, Relation::diagonal(4)}});
        CHECK(p.rho(0, 1) == R(1, 2));
        CHECK(p.rho(0, 2) == R(1));
        CHECK(p.rho(0, 3) == R(1));
        CHECK(p.sandwich);
        CHECK(p.rho.ball(R(1, 2)) == Relation::diagonal(4));

        CHECK_THROWS_AS(chain_pseudometric({Carrier::lettered(2), {Relation::full(2), fixtures::strong_two_point().basis()[0]}}),
                        AxiomError);

        std::mt19937_64 rng(22);
        for (int i = 0; i < 1000; ++i) {
            const unsigned n = 1 + i % 6;
            const EntourageChain chain = random_chain(n, 4, rng);
            REQUIRE_FALSE(chain_violation(chain));
            const ChainPseudometric r = chain_pseudometric(chain);
            CHECK(r.rho.matrix() == brute_chain_metric(chain));
            CHECK(r.sandwich);
            CHECK_FALSE(pseudometric_violation(r.rho.matrix()));
        }
    }

    TEST_CASE("unit ball")
    {
        const Carrier c = Carrier::lettered(3);
        const PreUniformity d = PreUniformity::discrete(c);
        const UnitBall u = unit_ball_pseudometric(d, Relation::diagonal(3));
        CHECK(u.certified);
        CHECK(u.rho(0, 1) == R(2));
        CHECK(u.rho.ball(R(1)) == Relation::diagonal(3));

        const PreUniformity s = fixtures::strong_two_point();
        const UnitBall v = unit_ball_pseudometric(s, s.basis()[0]);
        CHECK(v.certified);
        CHECK(v.rho.ball(R(1)).subset_of(s.basis()[0]));

        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n))
                if (mu.report().strong)
                    for (const Relation& b : mu.basis())
                        CHECK(unit_ball_pseudometric(mu, b).certified);
    }

    TEST_CASE("no pre-uniform pseudometric has its unit ball inside a non-symmetric entourage")
    {
        // {rho < 1} is symmetric, so inside V it is inside V n V^-1 = diagonal.
        const PreUniformity s = fixtures::strong_two_point();
        const Relation v = s.basis()[0];
        for (long long p = 0; p <= 16; ++p) {
            const Rational t(p, 4);
            const Pseudometric rho(s.carrier(), {{R(0), t}, {t, R(0)}});
            if (is_preuniform_pseudometric(rho, s))
                CHECK_FALSE(rho.ball(R(1)).subset_of(v));
        }
        CHECK_FALSE(unit_ball_pseudometric(s, v).preuniform_wrt_mu);
    }

    TEST_CASE("separating function")
    {
        const PreUniformity d = PreUniformity::discrete(Carrier::lettered(3));
        const SeparatingFunction f = separating_function(d, 0, PointSet::of(3, {1, 2}));
        CHECK(f.values == std::vector<Rational>{R(0), R(1), R(1)});
        CHECK(f.endpoints);
        const SeparatingFunction g = separating_function(fixtures::strong_two_point(), 0, PointSet(2, 0));
        CHECK(g.endpoints);
        CHECK(g.values[0] == R(0));

        for (unsigned n = 1; n <= 3; ++n)
            for (const PreUniformity& mu : fixtures::valid_preuniformities(n)) {
                if (!mu.report().strong)
                    continue;
                const PreTopology tau = induced_pretopology(mu);
                for (Point x = 0; x < n; ++x)
                    for (PointSet f : tau.closed_sets())
                        if (!f.contains(x))
                            CHECK(separating_function(mu, x, f).endpoints);
            }
    }
}
