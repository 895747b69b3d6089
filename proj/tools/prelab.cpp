// prelab: verify, derive, search and explain finite pre-structures.
//
// Exit codes: 0 success, 1 I/O or format error, 2 axiom failure.

#include "prelab/derive.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace prelab;

namespace {

constexpr int kOk = 0;
constexpr int kFormat = 1;
constexpr int kAxiom = 2;

struct Options
{
    std::string format = "json";
    std::string out;
};

void emit(const Options& opt, const json& doc, const std::string& text)
{
    const std::string body = opt.format == "text" ? text : dump(doc);
    if (opt.out.empty())
        std::cout << body;
    else
        write_file(opt.out, body);
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// --- verify -----------------------------------------------------------------------

json claim_check(const json& doc, AtomContext& ctx, std::string& text)
{
    json out = json::array();
    if (!doc.contains("claims"))
        return out;
    for (const auto& [atom, claimed] : doc.at("claims").items()) {
        if (!claimed.is_boolean())
            throw FormatError("claim \"" + atom + "\" must be true or false");
        const bool actual = ctx.atom(atom);
        if (actual != claimed.get<bool>()) {
            out.push_back(json{{"atom", atom}, {"claimed", claimed}, {"actual", actual}});
            text += "DISCREPANCY: claimed " + atom + " = " + (claimed.get<bool>() ? "true" : "false") + ", computed " +
                    (actual ? "true" : "false") + "\n";
        }
    }
    return out;
}

int verify_preuniformity(const json& doc, const Options& opt)
{
    const Carrier c = carrier_from_json(doc.at("carrier"));
    const std::vector<Relation> raw = basis_from_json(c, doc);
    const AxiomReport rep = check_axioms(c, raw);
    json report = axiom_report_to_json(c, rep);
    report["kind"] = "report";
    report["subject"] = "preuniformity";
    std::string text = "classification: " + rep.classification() + "\n";
    for (const AxiomVerdict& v : rep.verdicts) {
        text += std::string(axiom_name(v.axiom)) + ": " + (v.holds ? "holds" : "fails");
        if (!v.holds)
            text += " (" + v.witness + ")";
        text += "\n";
    }
    if (!rep[Axiom::U1].holds) {
        emit(opt, report, text);
        return kAxiom;
    }
    const PreUniformity mu(c, raw);
    const PreTopology tau = induced_pretopology(mu);
    const SeparationProfile s = separation_profile(tau);
    report["tau"] = to_json(tau)["opens"];
    report["tau_discrete"] = tau.is_discrete();
    report["separation"] = {{"t0", s.t0}, {"t1", s.t1}, {"hausdorff", s.t2}, {"regular", s.regular},
                            {"completely_regular", s.completely_regular}, {"normal", s.normal}};
    text += "tau(mu): " + std::to_string(tau.opens().size()) + " opens, " + (tau.is_discrete() ? "discrete" : "not discrete") +
            "\nT0 " + yes(s.t0) + ", T1 " + yes(s.t1) + ", Hausdorff " + yes(s.t2) + ", regular " + yes(s.regular) +
            ", completely regular " + yes(s.completely_regular) + "\n";
    AtomContext ctx(mu);
    report["discrepancies"] = claim_check(doc, ctx, text);
    emit(opt, report, text);
    return rep.is_preuniformity ? kOk : kAxiom;
}

int verify_pretopology(const json& doc, const Options& opt)
{
    const Carrier c = carrier_from_json(doc.at("carrier"));
    std::vector<PointSet> opens;
    for (const json& s : doc.at("opens"))
        opens.push_back(set_from_json(c, s));
    json report{{"kind", "report"}, {"subject", "pretopology"}};
    std::string text;
    if (!is_pretopology(c.size(), opens)) {
        const auto closed = union_closure(c.size(), opens);
        std::string missing;
        for (PointSet s : closed)
            if (std::find(opens.begin(), opens.end(), s) == opens.end()) {
                missing = format_set(c, s);
                break;
            }
        report["pretopology"] = false;
        report["witness"] = missing.empty() ? "the family does not cover the carrier" : missing + " is a union of opens but not listed";
        emit(opt, report, "not a pre-topology: " + report["witness"].get<std::string>() + "\n");
        return kAxiom;
    }
    const PreTopology tau(c, opens);
    const SeparationProfile s = separation_profile(tau);
    report["pretopology"] = true;
    report["separation"] = {{"t0", s.t0}, {"t1", s.t1}, {"hausdorff", s.t2}, {"regular", s.regular},
                            {"completely_regular", s.completely_regular}, {"normal", s.normal}};
    text = "pre-topology with " + std::to_string(tau.opens().size()) + " opens\nT0 " + yes(s.t0) + ", T1 " + yes(s.t1) +
           ", Hausdorff " + yes(s.t2) + ", regular " + yes(s.regular) + ", completely regular " +
           yes(s.completely_regular) + ", normal " + yes(s.normal) + "\n";
    AtomContext ctx(tau);
    report["discrepancies"] = claim_check(doc, ctx, text);
    emit(opt, report, text);
    return kOk;
}

int verify_preproximity(const json& doc, const Options& opt)
{
    bool added = false;
    const PreProximity delta = preproximity_from_json(doc, &added);
    const PpReport rep = check_pp_axioms(delta);
    json report = pp_report_to_json(rep);
    report["kind"] = "report";
    report["subject"] = "preproximity";
    report["closure_added_pairs"] = added;
    std::string text = "classification: " + report["classification"].get<std::string>() + "\n";
    for (std::size_t i = 0; i < rep.holds.size(); ++i) {
        text += std::string(pp_axiom_name(static_cast<PpAxiom>(i))) + ": " + (rep.holds[i] ? "holds" : "fails");
        if (!rep.holds[i])
            text += " (" + rep.witness[i] + ")";
        text += "\n";
    }
    if (added)
        text += "note: the listed near pairs were closed under symmetry and enlargement\n";
    AtomContext ctx(delta);
    report["discrepancies"] = claim_check(doc, ctx, text);
    emit(opt, report, text);
    return rep.is_preproximity() ? kOk : kAxiom;
}

int verify_group(const json& doc, const Options& opt)
{
    const GroupSubject g = group_from_json(doc);
    json report{{"kind", "report"}, {"subject", "pretopgroup"}};
    const auto violation = pretopological_group_violation(g.group, g.tau);
    report["pretopological_group"] = !violation;
    std::string text = "pre-topological group: " + yes(!violation) + "\n";
    if (violation) {
        report["witness"] = *violation;
        text += "  " + *violation + "\n";
    }
    bool strong = false;
    try {
        strong = is_strongly_pretopological_group(g.group, g.tau, g.base);
    } catch (const PreconditionError& e) {
        report["base_problem"] = e.what();
        text += "base at identity: " + std::string(e.what()) + "\n";
    }
    report["strongly_pretopological"] = strong;
    text += "strongly pre-topological: " + yes(strong) + "\n";
    if (strong) {
        try {
            const GroupPipeline p = group_preuniformity(g.group, g.tau, g.base);
            report["pipeline"] = {{"uc", p.uc.holds()}, {"strong", p.strong}, {"induces_tau", p.induces_tau},
                                  {"completely_regular", p.completely_regular}};
            text += "pipeline: complete, completely regular\n";
        } catch (const AxiomError& e) {
            report["pipeline"] = {{"failed_stage", e.stage()}, {"witness", e.witness()}};
            text += "pipeline fails at " + e.stage() + ": " + e.witness() + "\n";
        }
    }
    AtomContext ctx(g);
    report["discrepancies"] = claim_check(doc, ctx, text);
    emit(opt, report, text);
    return violation ? kAxiom : kOk;
}

int verify_pseudometric(const json& doc, const Options& opt)
{
    carrier_from_json(doc.at("carrier"));
    std::vector<std::vector<Rational>> d;
    try {
        for (const json& row : doc.at("d")) {
            std::vector<Rational> r;
            for (const json& v : row)
                r.push_back(parse_rational(v.get<std::string>()));
            d.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    } catch (const PreconditionError& e) {
        throw FormatError(e.what());
    }
    const auto violation = pseudometric_violation(d);
    json report{{"kind", "report"}, {"subject", "pseudometric"}, {"pseudometric", !violation}};
    if (violation)
        report["witness"] = *violation;
    emit(opt, report, violation ? "not a pseudometric: " + *violation + "\n" : "pseudometric\n");
    return violation ? kAxiom : kOk;
}

int verify_chain(const json& doc, const Options& opt)
{
    const EntourageChain chain = chain_from_json(doc);
    const auto violation = chain_violation(chain);
    json report{{"kind", "report"}, {"subject", "chain"}, {"chain", !violation}};
    std::string text;
    if (violation) {
        report["witness"] = *violation;
        text = "not a chain: " + *violation + "\n";
    } else {
        const ChainPseudometric r = chain_pseudometric(chain);
        report["sandwich"] = r.sandwich;
        text = "valid chain; sandwich " + std::string(r.sandwich ? "holds" : "fails") + "\n";
    }
    emit(opt, report, text);
    return violation ? kAxiom : kOk;
}

int verify_replay(const json& doc, const Options& opt)
{
    const std::string kind = document_kind(doc);
    const Replay r = kind == "certificate" ? replay_certificate(doc) : replay_derivation(doc);
    json report{{"kind", "report"}, {"subject", kind}, {"replays", r.ok}};
    if (!r.ok)
        report["reason"] = r.reason;
    emit(opt, report, r.ok ? kind + " replays\n" : kind + " does not replay: " + r.reason + "\n");
    return r.ok ? kOk : kAxiom;
}

int cmd_verify(const std::string& file, const Options& opt)
{
    const json doc = read_json_file(file);
    try {
        const std::string kind = document_kind(doc);
        if (kind == "preuniformity")
            return verify_preuniformity(doc, opt);
        if (kind == "pretopology")
            return verify_pretopology(doc, opt);
        if (kind == "preproximity")
            return verify_preproximity(doc, opt);
        if (kind == "pretopgroup")
            return verify_group(doc, opt);
        if (kind == "pseudometric")
            return verify_pseudometric(doc, opt);
        if (kind == "chain")
            return verify_chain(doc, opt);
        if (kind == "certificate" || kind == "derivation")
            return verify_replay(doc, opt);
        throw FormatError("cannot verify a \"" + kind + "\" document");
    } catch (const json::exception& e) {
        throw FormatError(file + ": " + e.what());
    }
}

// --- derive -----------------------------------------------------------------------

int cmd_derive(const std::string& construction, const std::vector<std::string>& files, std::size_t bound,
               const Options& opt)
{
    std::vector<json> inputs;
    for (const std::string& f : files)
        inputs.push_back(read_json_file(f));
    const Derivation d = derive(construction, inputs, bound);
    const json record = derivation_record(construction, inputs, bound, d);
    std::string text = construction + ":\n" + d.output.dump() + "\n";
    for (const auto& [k, v] : d.notes.items())
        text += "  " + k + ": " + v.dump() + "\n";
    emit(opt, d.output, text);
    if (!opt.out.empty()) {
        std::string cert = opt.out;
        const auto dot = cert.rfind(".json");
        cert = (dot != std::string::npos && dot + 5 == cert.size() ? cert.substr(0, dot) : cert) + ".cert.json";
        write_file(cert, dump(record));
    }
    return kOk;
}

// --- search -----------------------------------------------------------------------

std::string summary(const json& r)
{
    const std::string kind = document_kind(r);
    if (kind == "certificate")
        return "certificate " + r.at("canonical_id").get<std::string>() + " for " + r.at("property").get<std::string>() + "\n";
    if (kind == "exhausted") {
        std::string s = "exhausted " + r.at("query").at("property").get<std::string>() + " for n = " +
                        std::to_string(r.at("bounds").at("min_n").get<unsigned>()) + ".." +
                        std::to_string(r.at("bounds").at("max_n").get<unsigned>()) + ":";
        for (const json& v : r.at("visited"))
            s += " n=" + std::to_string(v.at("n").get<unsigned>()) + " " + std::to_string(v.at("classes").get<std::size_t>()) +
                 " classes;";
        return s + "\n";
    }
    if (kind == "partial")
        return "shard " + std::to_string(r.at("shard").at("index").get<unsigned>()) + "/" +
               std::to_string(r.at("shard").at("count").get<unsigned>()) + ": " + summary(r.at("result"));
    return kind + "\n";
}

int cmd_search(const std::vector<std::string>& files, const std::string& shard, unsigned shards, bool merge,
               std::size_t bound, const Options& opt)
{
    json result;
    if (merge) {
        std::vector<json> partials;
        for (const std::string& f : files)
            partials.push_back(read_json_file(f));
        result = merge_results(partials);
    } else {
        if (files.size() != 1)
            throw FormatError("search takes exactly one query file");
        SearchQuery query = query_from_json(read_json_file(files.front()));
        if (bound)
            query.max_n = std::max(query.min_n, static_cast<unsigned>(bound));
        result = shard.empty() ? hunt_sharded(query, shards) : hunt(query, parse_shard(shard));
    }
    emit(opt, result, summary(result));
    return kOk;
}

// --- explain ---------------------------------------------------------------------

int cmd_explain(const std::string& file, const Options& opt)
{
    const json doc = read_json_file(file);
    const std::string kind = document_kind(doc);
    std::ostringstream out;
    if (kind == "certificate") {
        const Subject s = subject_from_json(doc.at("structure"));
        out << "certificate " << doc.at("canonical_id").get<std::string>() << "\n";
        out << "property: " << doc.at("property").get<std::string>() << " = "
            << (doc.at("result").get<bool>() ? "true" : "false") << "\n";
        if (const auto* mu = std::get_if<PreUniformity>(&s)) {
            out << "pre-uniformity generated by:\n";
            for (const Relation& r : mu->basis())
                out << "  " << format_relation(mu->carrier(), r) << "\n";
        } else {
            out << "structure: " << doc.at("structure").dump() << "\n";
        }
        out << "trace:\n";
        for (const json& t : doc.at("trace"))
            out << "  " << t.at("atom").get<std::string>() << " = " << (t.at("value").get<bool>() ? "true" : "false")
                << "\n";
        const Replay r = replay_certificate(doc);
        out << "replay: " << (r.ok ? "ok" : "FAILED (" + r.reason + ")") << "\n";
    } else if (kind == "derivation") {
        out << "derivation " << doc.at("construction").get<std::string>() << " over " << doc.at("inputs").size()
            << " input(s)\noutput: " << doc.at("output").dump() << "\n";
        for (const auto& [k, v] : doc.at("notes").items())
            out << "  " << k << ": " << v.dump() << "\n";
        const Replay r = replay_derivation(doc);
        out << "replay: " << (r.ok ? "ok" : "FAILED (" + r.reason + ")") << "\n";
    } else {
        out << summary(doc);
    }
    Options text = opt;
    text.format = "text";
    emit(text, doc, out.str());
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite pre-topologies, pre-uniformities and pre-proximities"};
    app.require_subcommand(1);
    Options opt;
    std::size_t bound = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", opt.out, "write here instead of stdout");
    };

    std::string file;
    auto* verify = app.add_subcommand("verify", "check the axioms of a structure, or replay a certificate");
    verify->add_option("file", file)->required();
    add_common(verify);

    std::string construction;
    std::vector<std::string> inputs;
    auto* derive_cmd = app.add_subcommand("derive", "run a construction");
    derive_cmd->add_option("construction", construction)->required();
    derive_cmd->add_option("inputs", inputs)->required();
    derive_cmd->add_option("--bound", bound, "basis size bound (universal)");
    add_common(derive_cmd);

    std::vector<std::string> query_files;
    std::string shard;
    unsigned shards = 1;
    bool merge = false;
    auto* search = app.add_subcommand("search", "hunt for a structure satisfying a property");
    search->add_option("query", query_files, "query file, or partial records with --merge")->required();
    search->add_option("--shard", shard, "run slice k/m only and write a partial record");
    search->add_option("--shards", shards, "split into m slices and merge")->check(CLI::PositiveNumber);
    search->add_flag("--merge", merge, "merge partial records");
    search->add_option("--bound", bound, "override the largest carrier size");
    add_common(search);

    auto* explain = app.add_subcommand("explain", "pretty-print a certificate or record");
    explain->add_option("file", file)->required();
    add_common(explain);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kFormat;
    }

    try {
        if (*verify)
            return cmd_verify(file, opt);
        if (*derive_cmd)
            return cmd_derive(construction, inputs, bound, opt);
        if (*search)
            return cmd_search(query_files, shard, shards, merge, bound, opt);
        return cmd_explain(file, opt);
    } catch (const AxiomError& e) {
        std::cerr << "axiom failure at " << e.stage() << ": " << e.witness() << "\n";
        return kAxiom;
    } catch (const CeilingError& e) {
        std::cerr << "ceiling: " << e.what() << "\n";
        return kFormat;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFormat;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFormat;
    }
}
