#include "prelab/interchange.hpp"

#include <fstream>
#include <sstream>

namespace prelab {

namespace {

const json& field(const json& doc, const char* name)
{
    if (!doc.is_object() || !doc.contains(name))
        throw FormatError(std::string("missing field \"") + name + "\"");
    return doc.at(name);
}

void expect_kind(const json& doc, const char* kind)
{
    const std::string k = document_kind(doc);
    if (k != kind)
        throw FormatError("expected a \"" + std::string(kind) + "\" document, got \"" + k + "\"");
}

Point point(const Carrier& c, const json& j)
{
    if (!j.is_string())
        throw FormatError("points are named by label strings");
    const auto idx = c.index_of(j.get<std::string>());
    if (!idx)
        throw FormatError("unknown label \"" + j.get<std::string>() + "\"");
    return *idx;
}

const json& array(const json& j, const char* what)
{
    if (!j.is_array())
        throw FormatError(std::string(what) + " must be a list");
    return j;
}

template <class F>
auto wrap(F&& f) -> decltype(f())
{
    // Library preconditions raised while decoding are format problems.
    try {
        return f();
    } catch (const PreconditionError& e) {
        throw FormatError(e.what());
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    }
}

} // namespace

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

std::string dump(const json& doc)
{
    return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot write " + path);
    out << text;
}

std::string document_kind(const json& doc)
{
    const json& k = field(doc, "kind");
    if (!k.is_string())
        throw FormatError("\"kind\" must be a string");
    return k.get<std::string>();
}

Carrier carrier_from_json(const json& j)
{
    return wrap([&] {
        array(j, "carrier");
        std::vector<std::string> labels;
        for (const json& l : j) {
            if (!l.is_string())
                throw FormatError("carrier labels must be strings");
            labels.push_back(l.get<std::string>());
        }
        return Carrier(std::move(labels));
    });
}

json carrier_to_json(const Carrier& c)
{
    return json(c.labels());
}

PointSet set_from_json(const Carrier& c, const json& j)
{
    array(j, "subset");
    PointSet s = PointSet::empty(c.size());
    for (const json& p : j)
        s.insert(point(c, p));
    return s;
}

json set_to_json(const Carrier& c, PointSet s)
{
    json out = json::array();
    s.for_each([&](Point x) { out.push_back(c.label(x)); });
    return out;
}

Relation relation_from_json(const Carrier& c, const json& j)
{
    return wrap([&] {
        array(j, "relation");
        Relation r(c.size());
        for (const json& pr : j) {
            if (!pr.is_array() || pr.size() != 2)
                throw FormatError("relation members are [x, y] pairs");
            r.insert(point(c, pr[0]), point(c, pr[1]));
        }
        return r;
    });
}

json relation_to_json(const Carrier& c, const Relation& r)
{
    json out = json::array();
    for (auto [x, y] : r.pairs())
        out.push_back(json::array({c.label(x), c.label(y)}));
    return out;
}

std::vector<Relation> basis_from_json(const Carrier& c, const json& doc)
{
    std::vector<Relation> basis;
    for (const json& r : array(field(doc, "basis"), "basis"))
        basis.push_back(relation_from_json(c, r));
    if (basis.empty())
        throw FormatError("empty basis");
    return basis;
}

PreUniformity preuniformity_from_json(const json& doc)
{
    expect_kind(doc, "preuniformity");
    const Carrier c = carrier_from_json(field(doc, "carrier"));
    return wrap([&] { return PreUniformity(c, basis_from_json(c, doc)); });
}

json to_json(const PreUniformity& mu)
{
    json basis = json::array();
    for (const Relation& r : mu.basis())
        basis.push_back(relation_to_json(mu.carrier(), r));
    return json{{"kind", "preuniformity"}, {"carrier", carrier_to_json(mu.carrier())}, {"basis", basis}};
}

PreTopology pretopology_from_json(const json& doc)
{
    expect_kind(doc, "pretopology");
    const Carrier c = carrier_from_json(field(doc, "carrier"));
    return wrap([&] {
        std::vector<PointSet> opens;
        for (const json& s : array(field(doc, "opens"), "opens"))
            opens.push_back(set_from_json(c, s));
        return PreTopology(c, std::move(opens));
    });
}

json to_json(const PreTopology& tau)
{
    json opens = json::array();
    for (PointSet s : tau.opens())
        opens.push_back(set_to_json(tau.carrier(), s));
    return json{{"kind", "pretopology"}, {"carrier", carrier_to_json(tau.carrier())}, {"opens", opens}};
}

PreProximity preproximity_from_json(const json& doc, bool* added)
{
    expect_kind(doc, "preproximity");
    const Carrier c = carrier_from_json(field(doc, "carrier"));
    return wrap([&] {
        std::vector<std::pair<PointSet, PointSet>> near;
        for (const json& pr : array(field(doc, "near"), "near")) {
            if (!pr.is_array() || pr.size() != 2)
                throw FormatError("near members are [A, B] pairs of label lists");
            near.emplace_back(set_from_json(c, pr[0]), set_from_json(c, pr[1]));
        }
        return PreProximity::from_near_pairs(c, near, added);
    });
}

json to_json(const PreProximity& delta)
{
    json near = json::array();
    for (auto [a, b] : delta.near_pairs())
        near.push_back(json::array({set_to_json(delta.carrier(), a), set_to_json(delta.carrier(), b)}));
    return json{{"kind", "preproximity"}, {"carrier", carrier_to_json(delta.carrier())}, {"near", near}};
}

Pseudometric pseudometric_from_json(const json& doc)
{
    expect_kind(doc, "pseudometric");
    const Carrier c = carrier_from_json(field(doc, "carrier"));
    return wrap([&] {
        std::vector<std::vector<Rational>> d;
        for (const json& row : array(field(doc, "d"), "d")) {
            std::vector<Rational> r;
            for (const json& v : array(row, "distance row")) {
                if (!v.is_string())
                    throw FormatError("distances are \"p/q\" strings");
                r.push_back(parse_rational(v.get<std::string>()));
            }
            d.push_back(std::move(r));
        }
        return Pseudometric(c, std::move(d));
    });
}

json to_json(const Pseudometric& rho)
{
    json d = json::array();
    for (const auto& row : rho.matrix()) {
        json r = json::array();
        for (const Rational& v : row)
            r.push_back(format_rational(v));
        d.push_back(r);
    }
    return json{{"kind", "pseudometric"}, {"carrier", carrier_to_json(rho.carrier())}, {"d", d}};
}

EntourageChain chain_from_json(const json& doc)
{
    expect_kind(doc, "chain");
    const Carrier c = carrier_from_json(field(doc, "carrier"));
    EntourageChain chain{c, {}};
    for (const json& r : array(field(doc, "chain"), "chain"))
        chain.v.push_back(relation_from_json(c, r));
    return chain;
}

json to_json(const EntourageChain& chain)
{
    json v = json::array();
    for (const Relation& r : chain.v)
        v.push_back(relation_to_json(chain.carrier, r));
    return json{{"kind", "chain"}, {"carrier", carrier_to_json(chain.carrier)}, {"chain", v}};
}

GroupSubject group_from_json(const json& doc)
{
    expect_kind(doc, "pretopgroup");
    const Carrier c = carrier_from_json(field(doc, "carrier"));
    return wrap([&] {
        std::vector<std::vector<Point>> table;
        for (const json& row : array(field(doc, "table"), "table")) {
            std::vector<Point> r;
            for (const json& v : array(row, "table row"))
                r.push_back(point(c, v));
            table.push_back(std::move(r));
        }
        GroupTable g = GroupTable::from_table(c, std::move(table));
        std::vector<PointSet> opens, base;
        for (const json& s : array(field(doc, "opens"), "opens"))
            opens.push_back(set_from_json(c, s));
        for (const json& s : array(field(doc, "base_at_identity"), "base_at_identity"))
            base.push_back(set_from_json(c, s));
        return GroupSubject{std::move(g), PreTopology(c, std::move(opens)), std::move(base)};
    });
}

json to_json(const GroupSubject& g)
{
    const Carrier& c = g.group.carrier;
    json table = json::array();
    for (const auto& row : g.group.mul) {
        json r = json::array();
        for (Point v : row)
            r.push_back(c.label(v));
        table.push_back(r);
    }
    json base = json::array();
    for (PointSet b : g.base)
        base.push_back(set_to_json(c, b));
    return json{{"kind", "pretopgroup"},
                {"carrier", carrier_to_json(c)},
                {"table", table},
                {"opens", to_json(g.tau)["opens"]},
                {"base_at_identity", base}};
}

json axiom_report_to_json(const Carrier& c, const AxiomReport& rep)
{
    json axioms = json::object();
    for (const AxiomVerdict& v : rep.verdicts) {
        json entry{{"holds", v.holds}};
        if (!v.holds) {
            entry["witness"] = v.witness;
            json rels = json::array();
            for (const Relation& r : v.witness_relations)
                rels.push_back(relation_to_json(c, r));
            entry["witness_relations"] = rels;
        }
        axioms[axiom_name(v.axiom)] = entry;
    }
    return json{{"axioms", axioms},
                {"classification", rep.classification()},
                {"flags",
                 {{"preuniformity", rep.is_preuniformity},
                  {"symmetric", rep.symmetric},
                  {"strong", rep.strong},
                  {"almost", rep.almost},
                  {"uniform", rep.uniform}}}};
}

json pp_report_to_json(const PpReport& rep)
{
    json axioms = json::object();
    for (std::size_t i = 0; i < rep.holds.size(); ++i) {
        json entry{{"holds", rep.holds[i]}};
        if (!rep.holds[i])
            entry["witness"] = rep.witness[i];
        axioms[pp_axiom_name(static_cast<PpAxiom>(i))] = entry;
    }
    return json{{"axioms", axioms},
                {"classification", rep.is_proximity() ? "proximity" : rep.is_preproximity() ? "pre-proximity" : "invalid"},
                {"consequences",
                 {{"meeting_sets_near", rep.consequences[0]},
                  {"empty_far", rep.consequences[1]},
                  {"monotone", rep.consequences[2]}}}};
}

} // namespace prelab
