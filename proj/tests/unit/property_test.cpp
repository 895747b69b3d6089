#include "doctest.h"
#include "fixtures.hpp"

#include "prelab/property.hpp"

#include <map>

using namespace prelab;

namespace {

bool eval_with(const Property& p, const std::map<std::string, bool>& v, std::vector<std::string>* asked = nullptr)
{
    return p.evaluate([&](const std::string& a) {
        if (asked)
            asked->push_back(a);
        return v.at(a);
    });
}

PreUniformity example()
{
    return PreUniformity(Carrier::lettered(3),
                         {Relation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {2, 0}}),
                          Relation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}, {2, 1}})});
}

} // namespace

TEST_SUITE("property")
{
    TEST_CASE("parsing")
    {
        const Property p = Property::parse("strong ∧ ¬symmetric");
        CHECK(p.atoms() == std::vector<std::string>{"strong", "symmetric"});
        CHECK(eval_with(p, {{"strong", true}, {"symmetric", false}}));
        CHECK_FALSE(eval_with(p, {{"strong", true}, {"symmetric", true}}));

        const Property q = Property::parse("a | b & !c");
        for (int m = 0; m < 8; ++m) {
            const bool a = m & 1, b = m & 2, c = m & 4;
            CHECK(eval_with(q, {{"a", a}, {"b", b}, {"c", c}}) == (a || (b && !c)));
        }
        const Property r = Property::parse("(a ∨ b) ∧ ¬(c)");
        for (int m = 0; m < 8; ++m) {
            const bool a = m & 1, b = m & 2, c = m & 4;
            CHECK(eval_with(r, {{"a", a}, {"b", b}, {"c", c}}) == ((a || b) && !c));
        }

        const Property call = Property::parse("preuniformity ∧ ¬completely_regular(τ(μ))");
        CHECK(call.atoms() == std::vector<std::string>{"preuniformity", "completely_regular"});

        CHECK_THROWS_AS(Property::parse("a &"), PreconditionError);
        CHECK_THROWS_AS(Property::parse("(a"), PreconditionError);
        CHECK_THROWS_AS(Property::parse("a b"), PreconditionError);
        CHECK_THROWS_AS(Property::parse("f(x"), PreconditionError);
    }

    TEST_CASE("short circuit")
    {
        std::vector<std::string> asked;
        eval_with(Property::parse("a & b"), {{"a", false}, {"b", true}}, &asked);
        CHECK(asked == std::vector<std::string>{"a"});
        asked.clear();
        eval_with(Property::parse("a | b"), {{"a", true}, {"b", true}}, &asked);
        CHECK(asked == std::vector<std::string>{"a"});
    }

    TEST_CASE("names")
    {
        CHECK_NOTHROW(Property::parse("strong & t1").check_names(StructureKind::PreUniformity));
        CHECK_THROWS_AS(Property::parse("strong & bogus").check_names(StructureKind::PreUniformity), PreconditionError);
        CHECK_THROWS_AS(Property::parse("pp3").check_names(StructureKind::PreUniformity), PreconditionError);
        CHECK(has_atom(StructureKind::PreProximity, "pp3"));
        CHECK(parse_kind("preuniformity-basis") == StructureKind::PreUniformity);
        CHECK(parse_kind("preuniformity") == StructureKind::PreUniformity);
        CHECK_THROWS(parse_kind("topology"));
    }

    TEST_CASE("atoms on the three-point example")
    {
        AtomContext c{Subject(example())};
        CHECK(c.atom("u1"));
        CHECK(c.atom("u2"));
        CHECK_FALSE(c.atom("u3"));
        CHECK(c.atom("u5"));
        CHECK_FALSE(c.atom("preuniformity"));
        CHECK_FALSE(c.atom("discrete_tau"));
        CHECK(c.atom("t1"));
        CHECK_FALSE(c.atom("hausdorff"));
        CHECK_THROWS_AS(c.atom("nonsense"), PreconditionError);
    }

    TEST_CASE("full trace")
    {
        AtomContext c{Subject(fixtures::strong_two_point())};
        const auto [trace, value] = full_trace(Property::parse("symmetric & strong"), c);
        CHECK_FALSE(value);
        REQUIRE(trace.size() == 2);
        CHECK(trace[0].atom == "symmetric");
        CHECK_FALSE(trace[0].value);
        CHECK(trace[1].atom == "strong");
        CHECK(trace[1].value);
    }

    TEST_CASE("fast axiom flags agree with the built structure")
    {
        for (unsigned n = 1; n <= 3; ++n)
            enumerate(StructureKind::PreUniformity, n, {3}, [&](AtomContext& fast, const OrderKey&) {
                AtomContext slow{fast.subject()};
                for (const char* a : {"u2", "u3", "u5", "u6", "u2sym", "u3strong", "preuniformity", "strong",
                                      "symmetric", "almost", "uniform"})
                    CHECK(fast.atom(a) == slow.atom(a));
                return true;
            });
    }

    TEST_CASE("subject round trip")
    {
        const Subject s = fixtures::strong_two_point();
        CHECK(kind_of(s) == StructureKind::PreUniformity);
        CHECK(subject_to_json(subject_from_json(subject_to_json(s))) == subject_to_json(s));
    }
}
