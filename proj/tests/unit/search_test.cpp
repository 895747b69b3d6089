#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

#include "prelab/search.hpp"

#include <cstdlib>
#include <set>

using namespace prelab;

namespace {

// Orbits of labelled pretopologies under relabelling, counted by taking the
// least sorted mask list over all permutations.
std::size_t pretopology_orbits(unsigned n)
{
    std::set<std::vector<std::uint64_t>> reps;
    const auto perms = oracle::permutations(n);
    for (const auto& opens : oracle::all_pretopologies(n)) {
        std::vector<std::uint64_t> best;
        for (const auto& p : perms) {
            std::vector<std::uint64_t> img;
            for (auto m : opens)
                img.push_back(oracle::permute_mask(m, p));
            std::sort(img.begin(), img.end());
            if (best.empty() || img < best)
                best = img;
        }
        reps.insert(best);
    }
    return reps.size();
}

std::size_t proximity_orbits(unsigned n)
{
    std::set<std::vector<std::uint64_t>> reps;
    const auto perms = oracle::permutations(n);
    for (const Subject& s : enumerate_labelled(StructureKind::PreProximity, n)) {
        const auto& d = std::get<PreProximity>(s);
        std::vector<std::uint64_t> best;
        for (const auto& p : perms) {
            std::vector<std::uint64_t> rows(d.subsets(), 0);
            for (PointSet a : all_subsets(n))
                for (PointSet b : all_subsets(n))
                    if (d.near(a, b))
                        rows[oracle::permute_mask(a.bits(), p)] |= std::uint64_t{1} << oracle::permute_mask(b.bits(), p);
            if (best.empty() || rows < best)
                best = rows;
        }
        reps.insert(best);
    }
    return reps.size();
}

std::size_t count(StructureKind k, unsigned n, EnumerationBounds b = {}, Shard shard = {})
{
    return enumerate(k, n, b, [](AtomContext&, const OrderKey&) { return true; }, shard);
}

SearchQuery query(const std::string& property, unsigned max_n)
{
    return query_from_json(json{{"kind", "search-query"}, {"structure", "preuniformity-basis"}, {"max_n", max_n},
                               {"property", property}});
}

} // namespace

TEST_SUITE("search")
{
    TEST_CASE("orbit counts")
    {
        for (unsigned n = 1; n <= 3; ++n) {
            CHECK(count(StructureKind::Pretopology, n) == pretopology_orbits(n));
            CHECK(count(StructureKind::PreProximity, n) == proximity_orbits(n));
        }
        CHECK(count(StructureKind::Pretopology, 1) == 1);
        CHECK(fixtures::valid_preuniformities(1).size() == 1);
        CHECK(fixtures::valid_preuniformities(2).size() == 2);
        CHECK(fixtures::valid_preuniformities(2)[1] == fixtures::strong_two_point());
    }

    TEST_CASE("pre-uniformity classes against labelled bases")
    {
        // Labelled antichains on two points, grouped by relabelling.
        std::set<std::vector<Relation>> reps, valid;
        for (const Subject& s : enumerate_labelled(StructureKind::PreUniformity, 2)) {
            const auto& mu = std::get<PreUniformity>(s);
            std::vector<Relation> best;
            for (const auto& p : all_permutations(2)) {
                std::vector<Relation> img;
                for (const Relation& r : mu.basis())
                    img.push_back(relabel(r, p));
                std::sort(img.begin(), img.end());
                if (best.empty() || img < best)
                    best = img;
            }
            reps.insert(best);
            if (mu.valid())
                valid.insert(best);
        }
        CHECK(reps.size() == count(StructureKind::PreUniformity, 2));
        CHECK(valid.size() == fixtures::valid_preuniformities(2).size());
    }

    TEST_CASE("canonical keys are relabelling invariant")
    {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 100; ++i) {
            const unsigned n = 2 + i % 3;
            const PreUniformity mu = random_preuniformity(n, rng);
            const OrderKey k = canonical_key(mu);
            for (const auto& p : all_permutations(n)) {
                std::vector<Relation> img;
                for (const Relation& r : mu.basis())
                    img.push_back(relabel(r, p));
                CHECK(canonical_key(PreUniformity(mu.carrier(), img)) == k);
            }
        }
    }

    TEST_CASE("shards partition the enumeration")
    {
        for (StructureKind k : {StructureKind::Pretopology, StructureKind::PreUniformity, StructureKind::PreTopGroup}) {
            const unsigned n = k == StructureKind::PreUniformity ? 2 : 3;
            const std::size_t all = count(k, n);
            for (unsigned m = 2; m <= 4; ++m) {
                std::size_t sum = 0;
                for (unsigned i = 0; i < m; ++i)
                    sum += count(k, n, {}, {i, m});
                CHECK(sum == all);
            }
        }
        CHECK(parse_shard("2/5").index == 2);
        CHECK_THROWS_AS(parse_shard("5/5"), PreconditionError);
        CHECK_THROWS_AS(parse_shard("x"), PreconditionError);
    }

    TEST_CASE("ceilings")
    {
        CHECK(ceiling(StructureKind::PreProximity) == 3);
        CHECK(ceiling(StructureKind::Pretopology) == 4);
        CHECK_THROWS_AS(count(StructureKind::PreProximity, 4), CeilingError);
        CHECK_THROWS_AS(count(StructureKind::Pretopology, 5), CeilingError);
        setenv("PRETOP_CEILING", "2", 1);
        CHECK(ceiling(StructureKind::Pretopology) == 2);
        CHECK_THROWS_AS(count(StructureKind::Pretopology, 3), CeilingError);
        setenv("PRETOP_CEILING", "9", 1);
        CHECK(ceiling(StructureKind::Pretopology) == 4);
        unsetenv("PRETOP_CEILING");
    }

    TEST_CASE("known hunts")
    {
        const json cert = hunt(query("strong ∧ ¬symmetric", 2));
        CHECK(cert["kind"] == "certificate");
        CHECK(cert["canonical_id"] == "preuniformity-basis/n2/1.2");
        CHECK(subject_from_json(cert["structure"]).index() == 1);
        CHECK(std::get<PreUniformity>(subject_from_json(cert["structure"])) == fixtures::strong_two_point());

        const json ex = hunt(query("symmetric ∧ ¬strong", 2));
        CHECK(ex["kind"] == "exhausted");
        CHECK(ex["bounds"]["max_n"] == 2);
    }

    TEST_CASE("sharded hunts are byte-identical")
    {
        for (const char* p : {"strong ∧ ¬symmetric", "symmetric ∧ ¬strong", "preuniformity & !t1"}) {
            const SearchQuery s = query(p, 2);
            const std::string whole = dump(hunt(s));
            CHECK(dump(hunt(s)) == whole);
            for (unsigned m = 1; m <= 5; ++m) {
                CHECK(dump(hunt_sharded(s, m)) == whole);
                std::vector<json> parts;
                for (unsigned i = 0; i < m; ++i)
                    parts.push_back(hunt(s, {i, m}));
                if (m > 1)
                    CHECK(dump(merge_results(parts)) == whole);
            }
        }
        std::vector<json> parts{hunt(query("strong", 2), {0, 3}), hunt(query("strong", 2), {1, 3})};
        CHECK_THROWS_AS(merge_results(parts), FormatError);
        parts.push_back(hunt(query("symmetric", 2), {2, 3}));
        CHECK_THROWS_AS(merge_results(parts), FormatError);
    }

    TEST_CASE("certificates replay")
    {
        const json cert = hunt(query("strong ∧ ¬symmetric", 2));
        CHECK(verify_certificate(cert));
        CHECK(verify_certificate(json::parse(dump(cert))));

        json flipped = cert;
        flipped["trace"][0]["value"] = !flipped["trace"][0]["value"].get<bool>();
        CHECK_FALSE(verify_certificate(flipped));

        json renamed = cert;
        renamed["canonical_id"] = "preuniformity-basis/n2/1.3";
        CHECK_FALSE(verify_certificate(renamed));

        json falsified = cert;
        falsified["property"] = "symmetric";
        CHECK_FALSE(verify_certificate(falsified));

        json broken = cert;
        broken.erase("structure");
        CHECK_FALSE(verify_certificate(broken));
    }

    TEST_CASE("search query round trip")
    {
        const SearchQuery s = query("strong & !t1", 3);
        CHECK(query_to_json(query_from_json(query_to_json(s))) == query_to_json(s));
        CHECK(s.min_n == 1);
        CHECK(s.bounds.basis == 0);
        CHECK_THROWS_AS(query_from_json(json{{"kind", "search-query"}, {"structure", "preuniformity-basis"}, {"max_n", 2},
                                            {"property", "pp3"}}),
                        PreconditionError);
        CHECK_THROWS_AS(query_from_json(json{{"kind", "search-query"}, {"structure", "preuniformity-basis"}, {"min_n", 3},
                                            {"max_n", 2}, {"property", "strong"}}),
                        FormatError);
    }

    TEST_CASE("random structures")
    {
        std::mt19937_64 rng(32);
        for (int i = 0; i < 200; ++i) {
            const unsigned n = 1 + i % 4;
            CHECK(random_preuniformity(n, rng).valid());
            const EntourageChain c = random_chain(1 + i % 6, 4, rng);
            CHECK_FALSE(chain_violation(c));
        }
    }
}
