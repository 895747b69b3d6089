#include "prelab/property.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace prelab {

// --- kinds and subjects --------------------------------------------------------

const char* kind_name(StructureKind k)
{
    switch (k) {
    case StructureKind::Pretopology: return "pretopology";
    case StructureKind::PreUniformity: return "preuniformity-basis";
    case StructureKind::PreProximity: return "preproximity";
    case StructureKind::PreTopGroup: return "pretopgroup";
    }
    return "?";
}

StructureKind parse_kind(const std::string& name)
{
    if (name == "pretopology")
        return StructureKind::Pretopology;
    if (name == "preuniformity-basis" || name == "preuniformity")
        return StructureKind::PreUniformity;
    if (name == "preproximity")
        return StructureKind::PreProximity;
    if (name == "pretopgroup")
        return StructureKind::PreTopGroup;
    throw PreconditionError("unknown structure kind \"" + name + "\"");
}

StructureKind kind_of(const Subject& s)
{
    return static_cast<StructureKind>(s.index());
}

json subject_to_json(const Subject& s)
{
    return std::visit([](const auto& v) { return to_json(v); }, s);
}

Subject subject_from_json(const json& doc)
{
    const std::string k = document_kind(doc);
    if (k == "pretopology")
        return pretopology_from_json(doc);
    if (k == "preuniformity")
        return preuniformity_from_json(doc);
    if (k == "preproximity")
        return preproximity_from_json(doc);
    if (k == "pretopgroup")
        return group_from_json(doc);
    throw FormatError("not a structure document: \"" + k + "\"");
}

// --- atom registry ---------------------------------------------------------------

namespace {

const std::vector<std::string> kTopologyAtoms = {
    "t0", "t1", "hausdorff", "regular", "completely_regular", "normal", "discrete", "normal_hausdorff",
    "t2_roundtrip", "finest_compatible",
};

const std::vector<std::string> kUniformityAtoms = {
    "u1", "u2", "u3", "u5", "u6", "u2sym", "u3strong",
    "preuniformity", "symmetric", "strong", "almost", "uniform",
    "discrete_tau", "t0", "t1", "hausdorff", "regular", "completely_regular", "normal",
    "p8", "l5", "l6", "l7", "t7", "t718", "ct", "ppp", "p20222023", "p20222024", "p20222026", "p20222027",
    "c202211", "coreflection_symmetric", "coreflection_strong", "tb_reflection_fixed", "sup_delta_matches",
    "far_pair_converse", "unit_ball_preuniform", "separating_fibers_open",
};

const std::vector<std::string> kProximityAtoms = {
    "pp1", "pp2", "pp3", "pp4", "pp5", "pp6", "preproximity", "proximity",
    "ct", "lll", "l21", "t1", "p20222023", "p20222026", "p20222027", "far_pair_converse",
    "subspace_identity", "closure_invariance", "sup_self",
};

const std::vector<std::string> kGroupAtoms = {
    "pretopological_group", "strongly_pretopological", "t0", "t1", "completely_regular", "t717",
};

} // namespace

const std::vector<std::string>& atom_names(StructureKind k)
{
    switch (k) {
    case StructureKind::Pretopology: return kTopologyAtoms;
    case StructureKind::PreUniformity: return kUniformityAtoms;
    case StructureKind::PreProximity: return kProximityAtoms;
    case StructureKind::PreTopGroup: return kGroupAtoms;
    }
    return kTopologyAtoms;
}

bool has_atom(StructureKind k, const std::string& name)
{
    const auto& names = atom_names(k);
    return std::find(names.begin(), names.end(), name) != names.end();
}

// --- evaluation ----------------------------------------------------------------

namespace {

bool all_pairs(unsigned n, const std::function<bool(PointSet, PointSet)>& f)
{
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a)
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
            if (!f(PointSet(n, a), PointSet(n, b)))
                return false;
    return true;
}

bool opens_inside(const PreTopology& small, const PreTopology& large)
{
    return std::all_of(small.opens().begin(), small.opens().end(), [&](PointSet s) { return large.is_open(s); });
}

bool prebase_property(const PreUniformity& mu, const PreTopology& tau)
{
    for (Point x = 0; x < mu.size(); ++x) {
        const auto nb = neighborhood_prebase(mu, x);
        for (PointSet s : nb)
            if (!tau.is_open(s) || !s.contains(x))
                return false;
        for (PointSet g : tau.opens())
            if (g.contains(x) && std::none_of(nb.begin(), nb.end(), [&](PointSet s) { return s.subset_of(g); }))
                return false;
    }
    return true;
}

bool closure_conditions(const PreProximity& delta)
{
    const ClosureReport r = closure_operator(delta);
    return r.a && r.b && r.c && r.d && r.far_from_closure;
}

bool psi_roundtrip(const PreProximity& delta)
{
    const NbhdRelation ll = nbhd_relation(delta);
    const PsiReport rep = check_psi(ll);
    if (!std::all_of(rep.holds.begin(), rep.holds.end(), [](bool b) { return b; }))
        return false;
    const PreProximity back = delta_from_ll(ll);
    return back == delta && nbhd_relation(back) == ll;
}

bool cover_criterion_forward(const PreProximity& delta)
{
    return all_pairs(delta.size(), [&](PointSet a, PointSet b) { return !far_pair_criterion(delta, a, b) || delta.near(a, b); });
}

bool cover_criterion_converse(const PreProximity& delta)
{
    return all_pairs(delta.size(), [&](PointSet a, PointSet b) { return !delta.near(a, b) || far_pair_criterion(delta, a, b); });
}

bool mu_delta_properties(const PreProximity& delta, const PreUniformity* mu)
{
    const PreUniformity md = mu_delta(delta);
    if (!md.valid() || delta_from_preuniformity(md) != delta)
        return false;
    if (!totally_bounded(md).totally_bounded)
        return false;
    return !mu || is_subfamily(md, *mu);
}

bool l21_holds(const PreProximity& delta, const PreTopology& tau)
{
    const unsigned n = delta.size();
    for (Point x = 0; x < n; ++x)
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
            const PointSet as(n, a);
            if (delta.near(PointSet::singleton(n, x), as))
                continue;
            bool found = false;
            for (PointSet u : tau.opens())
                if (u.contains(x) && delta.far(u, as)) {
                    found = true;
                    break;
                }
            if (!found)
                return false;
        }
    return true;
}

bool closure_invariance(const PreProximity& delta, const std::vector<PointSet>& c)
{
    return all_pairs(delta.size(), [&](PointSet a, PointSet b) { return delta.near(a, b) == delta.near(c[a.bits()], c[b.bits()]); });
}

bool subspace_identity(const PreProximity& delta, const PreTopology& tau)
{
    const unsigned n = delta.size();
    for (std::uint64_t e = 1; e < (std::uint64_t{1} << n); ++e) {
        const PointSet es(n, e);
        const PreProximity sub = subspace(delta, es);
        if (!check_pp_axioms(sub).is_preproximity())
            return false;
        if (induced_pretopology(sub) != relativize(tau, es))
            return false;
    }
    return true;
}

} // namespace

struct AtomContext::Cache
{
    std::optional<Subject> subject;
    std::function<PreUniformity()> build;
    std::optional<AxiomFlags> flags;

    std::optional<PreTopology> tau;
    std::optional<PreProximity> delta;
    std::optional<PpReport> pp;
    std::optional<PreUniformity> core;
    std::optional<PreUniformity> mu_w;
    std::optional<SeparationProfile> sep;
    std::map<std::string, bool> memo;
};

AtomContext::AtomContext(Subject subject) : kind_(kind_of(subject)), cache_(std::make_unique<Cache>())
{
    cache_->subject = std::move(subject);
}

AtomContext::AtomContext(std::function<PreUniformity()> build, AxiomFlags flags)
    : kind_(StructureKind::PreUniformity), cache_(std::make_unique<Cache>())
{
    cache_->build = std::move(build);
    cache_->flags = flags;
}

AtomContext::~AtomContext() = default;
AtomContext::AtomContext(AtomContext&&) noexcept = default;

const Subject& AtomContext::subject()
{
    if (!cache_->subject)
        cache_->subject = cache_->build();
    return *cache_->subject;
}

bool AtomContext::atom(const std::string& name)
{
    if (!has_atom(kind_, name))
        throw PreconditionError("unresolvable property name \"" + name + "\" for " + kind_name(kind_));
    if (auto it = cache_->memo.find(name); it != cache_->memo.end())
        return it->second;
    Cache& c = *cache_;
    bool value = false;

    auto separation = [&](const PreTopology& tau) -> const SeparationProfile& {
        if (!c.sep)
            c.sep = separation_profile(tau);
        return *c.sep;
    };

    if (kind_ == StructureKind::PreUniformity) {
        if (c.flags && (name == "u1" || name == "u2" || name == "u3" || name == "u5" || name == "u6" ||
                        name == "u2sym" || name == "u3strong" || name == "preuniformity" || name == "symmetric" ||
                        name == "strong" || name == "almost" || name == "uniform")) {
            const AxiomFlags& f = *c.flags;
            const bool pre = f.preuniformity();
            const std::map<std::string, bool> table = {
                {"u1", f.u1}, {"u2", f.u2}, {"u3", f.u3}, {"u5", f.u5}, {"u6", f.u6}, {"u2sym", f.u2sym},
                {"u3strong", f.u3strong}, {"preuniformity", pre}, {"symmetric", pre && f.u2sym},
                {"strong", pre && f.u3strong}, {"almost", pre && f.u2sym && f.u3strong},
                {"uniform", pre && f.u2sym && f.u3strong && f.u6}};
            value = table.at(name);
        } else {
            const PreUniformity& mu = std::get<PreUniformity>(subject());
            const AxiomReport& rep = mu.report();
            auto tau = [&]() -> const PreTopology& {
                if (!c.tau)
                    c.tau = induced_pretopology(mu);
                return *c.tau;
            };
            auto delta = [&]() -> const PreProximity& {
                if (!c.delta)
                    c.delta = delta_from_preuniformity(mu);
                return *c.delta;
            };
            auto core = [&]() -> const PreUniformity& {
                if (!c.core)
                    c.core = coreflection(mu).star;
                return *c.core;
            };
            auto mu_w = [&]() -> const PreUniformity& {
                if (!c.mu_w)
                    c.mu_w = mu_delta(delta());
                return *c.mu_w;
            };
            const bool valid = rep.is_preuniformity;
            if (name == "u1") value = rep[Axiom::U1].holds;
            else if (name == "u2") value = rep[Axiom::U2].holds;
            else if (name == "u3") value = rep[Axiom::U3].holds;
            else if (name == "u5") value = rep[Axiom::U5].holds;
            else if (name == "u6") value = rep[Axiom::U6].holds;
            else if (name == "u2sym") value = rep[Axiom::U2Sym].holds;
            else if (name == "u3strong") value = rep[Axiom::U3Strong].holds;
            else if (name == "preuniformity") value = valid;
            else if (name == "symmetric") value = rep.symmetric;
            else if (name == "strong") value = rep.strong;
            else if (name == "almost") value = rep.almost;
            else if (name == "uniform") value = rep.uniform;
            else if (name == "discrete_tau") value = tau().is_discrete();
            else if (name == "t0") value = separation(tau()).t0;
            else if (name == "t1") value = separation(tau()).t1;
            else if (name == "hausdorff") value = separation(tau()).t2;
            else if (name == "regular") value = separation(tau()).regular;
            else if (name == "completely_regular") value = separation(tau()).completely_regular;
            else if (name == "normal") value = separation(tau()).normal;
            else if (name == "p8") value = !valid || (separation(tau()).t1 && separation(tau()).t2 && separation(tau()).regular);
            else if (name == "l5") {
                const bool hyp = rep[Axiom::U1].holds && rep[Axiom::U2].holds && rep[Axiom::U3].holds;
                const auto [a, b] = t0_criterion(mu);
                value = !hyp || a == b;
            } else if (name == "l6") {
                value = !valid || [&] {
                    const auto [cl, op] = entourage_prebase_verdicts(mu);
                    return cl && op;
                }();
            } else if (name == "l7") value = !valid || prebase_property(mu, tau());
            else if (name == "t7") value = !rep.strong || separation(tau()).completely_regular;
            else if (name == "t718") value = !valid || (check_pp_axioms(delta()).is_preproximity() && induced_pretopology(delta()) == tau());
            else if (name == "ct") value = !valid || closure_conditions(delta());
            else if (name == "ppp") {
                value = !valid || [&] {
                    const Coreflection cr = coreflection(mu);
                    return cr.intersection_equivalence && is_subfamily(mu, cr.star) && cr.star.report()[Axiom::U6].holds;
                }();
            } else if (name == "p20222023") value = !valid || mu_delta_properties(delta(), &mu);
            else if (name == "p20222024") {
                value = !valid || [&] {
                    // mu_w inside mu inside mu*.
                    const PreTopology tw = induced_pretopology(mu_w());
                    const PreTopology tc = induced_pretopology(core());
                    return opens_inside(tw, tau()) && opens_inside(tau(), tc) &&
                           delta().subset_of(delta_from_preuniformity(mu_w())) &&
                           delta_from_preuniformity(core()).subset_of(delta());
                }();
            } else if (name == "p20222026") value = !valid || psi_roundtrip(delta());
            else if (name == "p20222027") value = !valid || cover_criterion_forward(delta());
            else if (name == "c202211") {
                value = !rep.strong || std::all_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& u) {
                    return square_cover(mu, u).has_value();
                });
            } else if (name == "coreflection_symmetric") value = valid && core().report().symmetric;
            else if (name == "coreflection_strong") value = valid && core().report().strong;
            else if (name == "tb_reflection_fixed") value = valid && mu_w() == mu;
            else if (name == "sup_delta_matches") value = valid && sup_preproximities({delta()}) == delta();
            else if (name == "far_pair_converse") value = valid && cover_criterion_converse(delta());
            else if (name == "unit_ball_preuniform") {
                value = !rep.strong || std::all_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& v) {
                    return unit_ball_pseudometric(mu, v).preuniform_wrt_mu;
                });
            } else if (name == "separating_fibers_open") {
                value = true;
                if (rep.strong) {
                    const PreTopology& t = tau();
                    for (PointSet f : t.closed_sets())
                        for (Point x = 0; x < mu.size() && value; ++x)
                            if (!f.contains(x)) {
                                const SeparatingFunction sf = separating_function(mu, x, f);
                                value = sf.fibers_open && sf.endpoints;
                            }
                }
            }
        }
    } else if (kind_ == StructureKind::Pretopology) {
        const PreTopology& tau = std::get<PreTopology>(subject());
        const SeparationProfile& s = separation(tau);
        if (name == "t0") value = s.t0;
        else if (name == "t1") value = s.t1;
        else if (name == "hausdorff") value = s.t2;
        else if (name == "regular") value = s.regular;
        else if (name == "completely_regular") value = s.completely_regular;
        else if (name == "normal") value = s.normal;
        else if (name == "discrete") value = tau.is_discrete();
        else if (name == "normal_hausdorff") value = s.normal && s.t2;
        else if (name == "t2_roundtrip") {
            value = !s.completely_regular || [&] {
                const PreUniformity mu = generate_from_pseudometrics(continuous_pseudometrics(tau));
                return mu.report().strong && induced_pretopology(mu) == tau;
            }();
        } else if (name == "finest_compatible") {
            value = !(s.normal && s.t2) || [&] {
                const PreProximity d = finest_compatible(tau);
                return check_pp_axioms(d).is_preproximity() && induced_pretopology(d) == tau;
            }();
        }
    } else if (kind_ == StructureKind::PreProximity) {
        const PreProximity& delta = std::get<PreProximity>(subject());
        if (!c.pp)
            c.pp = check_pp_axioms(delta);
        const PpReport& rep = *c.pp;
        const bool valid = rep.is_preproximity();
        auto tau = [&]() -> const PreTopology& {
            if (!c.tau)
                c.tau = induced_pretopology(delta);
            return *c.tau;
        };
        static const std::map<std::string, PpAxiom> axioms = {{"pp1", PpAxiom::PP1}, {"pp2", PpAxiom::PP2},
                                                              {"pp3", PpAxiom::PP3}, {"pp4", PpAxiom::PP4},
                                                              {"pp5", PpAxiom::PP5}, {"pp6", PpAxiom::PP6}};
        if (auto it = axioms.find(name); it != axioms.end()) value = rep[it->second];
        else if (name == "preproximity") value = valid;
        else if (name == "proximity") value = rep.is_proximity();
        else if (name == "ct") value = !valid || closure_conditions(delta);
        else if (name == "lll") value = !valid || closure_operator(delta).far_from_closure;
        else if (name == "l21") value = !valid || l21_holds(delta, tau());
        else if (name == "t1") value = valid && is_t1(tau());
        else if (name == "p20222023") value = !valid || mu_delta_properties(delta, nullptr);
        else if (name == "p20222026") value = !valid || psi_roundtrip(delta);
        else if (name == "p20222027") value = !valid || cover_criterion_forward(delta);
        else if (name == "far_pair_converse") value = valid && cover_criterion_converse(delta);
        else if (name == "subspace_identity") value = !valid || subspace_identity(delta, tau());
        else if (name == "closure_invariance") value = !valid || closure_invariance(delta, closure_map(delta));
        else if (name == "sup_self") value = sup_preproximities({delta}) == delta;
    } else {
        const GroupSubject& g = std::get<GroupSubject>(subject());
        const SeparationProfile& s = separation(g.tau);
        if (name == "pretopological_group") value = is_pretopological_group(g.group, g.tau);
        else if (name == "strongly_pretopological") value = is_strongly_pretopological_group(g.group, g.tau, g.base);
        else if (name == "t0") value = s.t0;
        else if (name == "t1") value = s.t1;
        else if (name == "completely_regular") value = s.completely_regular;
        else if (name == "t717") {
            value = !is_strongly_pretopological_group(g.group, g.tau, g.base) || [&] {
                try {
                    return group_preuniformity(g.group, g.tau, g.base).completely_regular;
                } catch (const AxiomError&) {
                    return false;
                }
            }();
        }
    }
    c.memo[name] = value;
    return value;
}

// --- expressions ---------------------------------------------------------------

struct Property::Node
{
    enum Op { Atom, Not, And, Or } op = Atom;
    std::string name;
    std::shared_ptr<const Node> left, right;
};

namespace {

class Parser
{
public:
    explicit Parser(const std::string& s) : s_(s) {}

    std::shared_ptr<const Property::Node> parse()
    {
        auto n = parse_or();
        skip();
        if (pos_ != s_.size())
            error("unexpected input");
        return n;
    }

    std::vector<std::string> atoms;

private:
    using Node = Property::Node;

    [[noreturn]] void error(const std::string& what) const
    {
        throw PreconditionError("property syntax error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(std::initializer_list<const char*> tokens)
    {
        skip();
        for (const char* t : tokens) {
            const std::string tok(t);
            if (s_.compare(pos_, tok.size(), tok) == 0) {
                pos_ += tok.size();
                return true;
            }
        }
        return false;
    }

    std::shared_ptr<const Node> parse_or()
    {
        auto left = parse_and();
        while (eat({"|", "\xE2\x88\xA8"})) {
            auto n = std::make_shared<Node>();
            n->op = Node::Or;
            n->left = left;
            n->right = parse_and();
            left = n;
        }
        return left;
    }

    std::shared_ptr<const Node> parse_and()
    {
        auto left = parse_unary();
        while (eat({"&", "\xE2\x88\xA7"})) {
            auto n = std::make_shared<Node>();
            n->op = Node::And;
            n->left = left;
            n->right = parse_unary();
            left = n;
        }
        return left;
    }

    std::shared_ptr<const Node> parse_unary()
    {
        if (eat({"!", "\xC2\xAC"})) {
            auto n = std::make_shared<Node>();
            n->op = Node::Not;
            n->left = parse_unary();
            return n;
        }
        if (eat({"("})) {
            auto n = parse_or();
            if (!eat({")"}))
                error("expected ')'");
            return n;
        }
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            error("expected an atom");
        auto n = std::make_shared<Node>();
        n->name = s_.substr(start, pos_ - start);
        // completely_regular(τ(μ)): the argument only names the subject.
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            int depth = 0;
            do {
                if (s_[pos_] == '(')
                    ++depth;
                else if (s_[pos_] == ')')
                    --depth;
                ++pos_;
            } while (depth > 0 && pos_ < s_.size());
            if (depth > 0)
                error("expected ')'");
        }
        if (std::find(atoms.begin(), atoms.end(), n->name) == atoms.end())
            atoms.push_back(n->name);
        return n;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

bool eval(const Property::Node& n, const std::function<bool(const std::string&)>& atom)
{
    switch (n.op) {
    case Property::Node::Atom: return atom(n.name);
    case Property::Node::Not: return !eval(*n.left, atom);
    case Property::Node::And: return eval(*n.left, atom) && eval(*n.right, atom);
    case Property::Node::Or: return eval(*n.left, atom) || eval(*n.right, atom);
    }
    return false;
}

} // namespace

Property Property::parse(const std::string& text)
{
    Parser p(text);
    Property out;
    out.root_ = p.parse();
    out.atoms_ = std::move(p.atoms);
    out.text_ = text;
    return out;
}

void Property::check_names(StructureKind k) const
{
    for (const std::string& a : atoms_)
        if (!has_atom(k, a))
            throw PreconditionError("unresolvable property name \"" + a + "\" for " + kind_name(k));
}

bool Property::evaluate(const std::function<bool(const std::string&)>& atom) const
{
    return eval(*root_, atom);
}

std::pair<std::vector<TraceEntry>, bool> full_trace(const Property& p, AtomContext& ctx)
{
    std::vector<TraceEntry> trace;
    for (const std::string& a : p.atoms())
        trace.push_back({a, ctx.atom(a)});
    const bool v = p.evaluate([&](const std::string& a) { return ctx.atom(a); });
    return {std::move(trace), v};
}

} // namespace prelab
