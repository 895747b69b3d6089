#include "prelab/derive.hpp"

namespace prelab {

const std::vector<std::string>& construction_names()
{
    static const std::vector<std::string> names = {"tau",     "delta", "mu_delta",  "mu_w",
                                                   "coreflection", "chain-pseudometric", "product", "sup",
                                                   "universal", "separation-profile", "finest-compatible"};
    return names;
}

namespace {

void arity(const std::string& c, const std::vector<json>& in, std::size_t lo, std::size_t hi)
{
    if (in.size() < lo || in.size() > hi)
        throw FormatError(c + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " or more") +
                          " input file(s), got " + std::to_string(in.size()));
}

[[noreturn]] void wrong_kind(const std::string& c, const json& doc)
{
    throw FormatError(c + " does not apply to a \"" + document_kind(doc) + "\" document");
}

json profile_json(const SeparationProfile& s)
{
    return json{{"kind", "separation-profile"},
                {"t0", s.t0},
                {"t1", s.t1},
                {"hausdorff", s.t2},
                {"regular", s.regular},
                {"completely_regular", s.completely_regular},
                {"normal", s.normal}};
}

} // namespace

Derivation derive(const std::string& c, const std::vector<json>& in, std::size_t bound)
{
    Derivation d;
    if (c == "tau") {
        arity(c, in, 1, 1);
        const std::string k = document_kind(in[0]);
        if (k == "preuniformity") {
            d.output = to_json(induced_pretopology(preuniformity_from_json(in[0])));
        } else if (k == "preproximity") {
            const PreProximity delta = preproximity_from_json(in[0]);
            require_preproximity(delta, "tau");
            d.output = to_json(induced_pretopology(delta));
        } else {
            wrong_kind(c, in[0]);
        }
    } else if (c == "delta") {
        arity(c, in, 1, 1);
        const PreUniformity mu = preuniformity_from_json(in[0]);
        mu.require_valid("delta");
        d.output = to_json(delta_from_preuniformity(mu));
    } else if (c == "mu_delta") {
        arity(c, in, 1, 1);
        const PreProximity delta = preproximity_from_json(in[0]);
        require_preproximity(delta, "mu_delta");
        const PreUniformity mu = mu_delta(delta);
        d.output = to_json(mu);
        d.notes["induces_delta"] = delta_from_preuniformity(mu) == delta;
    } else if (c == "mu_w") {
        arity(c, in, 1, 1);
        const PreUniformity mu = preuniformity_from_json(in[0]);
        mu.require_valid("mu_w");
        const TotallyBoundedReflection r = totally_bounded_reflection(mu);
        d.output = to_json(r.mu_w);
        d.notes["equals_mu"] = r.equals_mu;
    } else if (c == "coreflection") {
        arity(c, in, 1, 1);
        const PreUniformity mu = preuniformity_from_json(in[0]);
        mu.require_valid("coreflection");
        const Coreflection r = coreflection(mu);
        d.output = to_json(r.star);
        d.notes["intersection_equivalence"] = r.intersection_equivalence;
        d.notes["classification"] = r.star.report().classification();
    } else if (c == "chain-pseudometric") {
        arity(c, in, 1, 1);
        const ChainPseudometric r = chain_pseudometric(chain_from_json(in[0]));
        d.output = to_json(r.rho);
        d.notes["sandwich"] = r.sandwich;
    } else if (c == "product") {
        arity(c, in, 2, 2);
        const PreUniformity l = preuniformity_from_json(in[0]);
        const PreUniformity r = preuniformity_from_json(in[1]);
        l.require_valid("product");
        r.require_valid("product");
        const ProductResult p = product(l, r);
        d.output = to_json(p.product);
        d.notes["projections_uniformly_continuous"] = p.projections_uniformly_continuous;
        d.notes["coreflection_matches"] = p.coreflection_matches;
    } else if (c == "sup") {
        arity(c, in, 1, SIZE_MAX);
        const std::string k = document_kind(in[0]);
        if (k == "preuniformity") {
            std::vector<PreUniformity> family;
            for (const json& j : in)
                family.push_back(preuniformity_from_json(j));
            const PreUniformity s = sup(family);
            d.output = to_json(s);
            d.notes["classification"] = s.report().classification();
        } else if (k == "preproximity") {
            std::vector<PreProximity> family;
            for (const json& j : in)
                family.push_back(preproximity_from_json(j));
            d.output = to_json(sup_preproximities(family));
        } else {
            wrong_kind(c, in[0]);
        }
    } else if (c == "universal") {
        arity(c, in, 1, 1);
        const PreTopology tau = pretopology_from_json(in[0]);
        const std::size_t b = bound ? bound : 3;
        const UniversalResult r = universal_preuniformity(tau, b);
        d.notes["basis_bound"] = b;
        d.notes["complete"] = r.complete;
        d.notes["compatible_found"] = r.compatible_found;
        if (!r.mu)
            throw AxiomError("universal", "bound exhausted: no compatible pre-uniformity with at most " +
                                              std::to_string(b) + " basis members");
        d.notes["union_compatible"] = r.union_compatible;
        d.output = to_json(*r.mu);
    } else if (c == "separation-profile") {
        arity(c, in, 1, 1);
        const std::string k = document_kind(in[0]);
        if (k == "pretopology")
            d.output = profile_json(separation_profile(pretopology_from_json(in[0])));
        else if (k == "preuniformity")
            d.output = profile_json(separation_profile(induced_pretopology(preuniformity_from_json(in[0]))));
        else
            wrong_kind(c, in[0]);
    } else if (c == "finest-compatible") {
        arity(c, in, 1, 1);
        d.output = to_json(finest_compatible(pretopology_from_json(in[0])));
    } else {
        std::string known;
        for (const std::string& n : construction_names())
            known += (known.empty() ? "" : ", ") + n;
        throw FormatError("unknown construction \"" + c + "\" (known: " + known + ")");
    }
    return d;
}

json derivation_record(const std::string& construction, const std::vector<json>& inputs, std::size_t bound,
                       const Derivation& d)
{
    return json{{"kind", "derivation"},
                {"schema_version", kSchemaVersion},
                {"construction", construction},
                {"bound", bound},
                {"inputs", inputs},
                {"output", d.output},
                {"notes", d.notes}};
}

Replay replay_derivation(const json& record)
{
    try {
        if (document_kind(record) != "derivation")
            return {false, "not a derivation record"};
        if (record.at("schema_version").get<int>() != kSchemaVersion)
            return {false, "unsupported schema version"};
        const Derivation d = derive(record.at("construction").get<std::string>(),
                                    record.at("inputs").get<std::vector<json>>(), record.at("bound").get<std::size_t>());
        if (d.output != record.at("output"))
            return {false, "output differs"};
        if (d.notes != record.at("notes"))
            return {false, "notes differ"};
        return {true, ""};
    } catch (const json::exception& e) {
        return {false, std::string("malformed derivation record: ") + e.what()};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

} // namespace prelab
