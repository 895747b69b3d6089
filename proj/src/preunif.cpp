#include "prelab/preunif.hpp"

#include "prelab/entourages.hpp"
#include "prelab/metrics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace prelab {

namespace {

std::string rel_text(const Relation& r)
{
    return format_relation(Carrier::lettered(r.universe()), r);
}

void check_carrier(const Carrier& c, const Relation& r)
{
    if (r.universe() != c.size())
        throw PreconditionError("relation lives on a carrier of size " + std::to_string(r.universe()) +
                                ", expected " + std::to_string(c.size()));
}

bool some_below(const std::vector<Relation>& basis, const Relation& v)
{
    return std::any_of(basis.begin(), basis.end(), [&](const Relation& b) { return b.subset_of(v); });
}

AxiomVerdict fail(Axiom a, std::string text, std::vector<Relation> rels)
{
    return AxiomVerdict{a, false, std::move(text), std::move(rels)};
}

} // namespace

const char* axiom_name(Axiom a)
{
    switch (a) {
    case Axiom::U1: return "U1";
    case Axiom::U2: return "U2";
    case Axiom::U3: return "U3";
    case Axiom::U4: return "U4";
    case Axiom::U5: return "U5";
    case Axiom::U6: return "U6";
    case Axiom::U2Sym: return "U2'";
    case Axiom::U3Strong: return "U3'";
    }
    return "?";
}

std::string AxiomReport::classification() const
{
    if (uniform)
        return "uniform";
    if (almost)
        return "almost uniform";
    if (strong)
        return "strong";
    if (symmetric)
        return "symmetric";
    if (is_preuniformity)
        return "pre-uniformity";
    return "invalid";
}

std::vector<Relation> minimal_antichain(std::vector<Relation> family)
{
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    std::vector<Relation> out;
    for (const Relation& r : family) {
        bool minimal = std::none_of(family.begin(), family.end(),
                                    [&](const Relation& s) { return s != r && s.subset_of(r); });
        if (minimal)
            out.push_back(r);
    }
    return out;
}

AxiomReport check_axioms(const Carrier& carrier, const std::vector<Relation>& raw)
{
    if (raw.empty())
        throw PreconditionError("empty basis");
    for (const Relation& r : raw)
        check_carrier(carrier, r);

    const unsigned n = carrier.size();
    const auto basis = minimal_antichain(raw);
    AxiomReport rep;
    for (std::size_t i = 0; i < rep.verdicts.size(); ++i)
        rep.verdicts[i].axiom = kAllAxioms[i];
    auto set = [&](AxiomVerdict v) { rep.verdicts[static_cast<std::size_t>(v.axiom)] = std::move(v); };

    // U1 fails for the up-closure iff it fails for a minimal member.
    for (const Relation& v : basis)
        if (!v.contains_diagonal()) {
            set(fail(Axiom::U1, rel_text(v) + " misses part of the diagonal", {v}));
            break;
        }

    for (const Relation& v : basis) {
        if (std::none_of(basis.begin(), basis.end(), [&](const Relation& u) { return u.inverse().subset_of(v); })) {
            set(fail(Axiom::U2, "no member U with U^-1 inside " + rel_text(v), {v}));
            break;
        }
    }

    for (const Relation& v : basis) {
        std::vector<Relation> tried{v};
        bool found = false;
        for (const Relation& u : basis) {
            for (const Relation& w : basis) {
                Relation c = u.compose(w);
                if (c.subset_of(v)) {
                    found = true;
                    break;
                }
                tried.push_back(c);
            }
            if (found)
                break;
        }
        if (!found) {
            std::string text = "no U o W inside " + rel_text(v) + "; compositions tried:";
            for (std::size_t i = 1; i < tried.size(); ++i)
                text += " " + rel_text(tried[i]);
            set(fail(Axiom::U3, std::move(text), std::move(tried)));
            break;
        }
    }

    Relation meet = basis.front();
    for (const Relation& v : basis)
        meet = meet & v;
    if (meet != Relation::diagonal(n)) {
        const Relation extra = meet - Relation::diagonal(n);
        set(fail(Axiom::U5, "intersection of the family is " + rel_text(meet), {meet, extra}));
    }

    for (std::size_t i = 0; i < basis.size() && rep[Axiom::U6].holds; ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const Relation m = basis[i] & basis[j];
            if (!some_below(basis, m)) {
                set(fail(Axiom::U6, "intersection of " + rel_text(basis[i]) + " and " + rel_text(basis[j]) +
                                        " contains no member",
                         {basis[i], basis[j], m}));
                break;
            }
        }

    for (const Relation& v : basis) {
        bool found = std::any_of(basis.begin(), basis.end(), [&](const Relation& b) { return (b | b.inverse()).subset_of(v); });
        if (!found) {
            set(fail(Axiom::U2Sym, "no symmetric member inside " + rel_text(v), {v}));
            break;
        }
    }

    for (const Relation& v : basis) {
        bool found = std::any_of(basis.begin(), basis.end(), [&](const Relation& w) { return w.compose(w).subset_of(v); });
        if (!found) {
            set(fail(Axiom::U3Strong, "no W with W o W inside " + rel_text(v), {v}));
            break;
        }
    }

    rep.is_preuniformity = rep[Axiom::U1].holds && rep[Axiom::U2].holds && rep[Axiom::U3].holds &&
                           rep[Axiom::U4].holds && rep[Axiom::U5].holds;
    rep.symmetric = rep.is_preuniformity && rep[Axiom::U2Sym].holds;
    rep.strong = rep.is_preuniformity && rep[Axiom::U3Strong].holds;
    rep.almost = rep.symmetric && rep.strong;
    rep.uniform = rep.almost && rep[Axiom::U6].holds;
    return rep;
}

// ---------------------------------------------------------------------------

PreUniformity::PreUniformity(Carrier carrier, std::vector<Relation> generators) : carrier_(std::move(carrier))
{
    if (generators.empty())
        throw PreconditionError("empty basis");
    for (const Relation& r : generators) {
        check_carrier(carrier_, r);
        if (!r.contains_diagonal())
            throw PreconditionError("entourage " + format_relation(carrier_, r) + " misses part of the diagonal");
    }
    basis_ = minimal_antichain(std::move(generators));
    report_ = check_axioms(carrier_, basis_);
}

PreUniformity PreUniformity::discrete(const Carrier& carrier)
{
    return PreUniformity(carrier, {Relation::diagonal(carrier.size())});
}

void PreUniformity::require_valid(const char* what) const
{
    if (valid())
        return;
    for (const auto& v : report_.verdicts)
        if (!v.holds && v.axiom != Axiom::U6 && v.axiom != Axiom::U2Sym && v.axiom != Axiom::U3Strong)
            throw AxiomError(what, std::string("not a pre-uniformity: ") + axiom_name(v.axiom) + " fails (" + v.witness + ")");
    throw AxiomError(what, "not a pre-uniformity");
}

bool PreUniformity::contains(const Relation& v) const
{
    check_carrier(carrier_, v);
    return some_below(basis_, v);
}

Relation PreUniformity::intersection() const
{
    Relation meet = basis_.front();
    for (const Relation& v : basis_)
        meet = meet & v;
    return meet;
}

std::vector<Relation> PreUniformity::members() const
{
    const EntourageSpace space(size());
    std::vector<Relation> out;
    for (std::uint32_t e = 0; e < space.count(); ++e) {
        Relation r = space.relation(e);
        if (some_below(basis_, r))
            out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

PreTopology induced_pretopology(const PreUniformity& mu)
{
    const unsigned n = mu.size();
    if (n > 20)
        throw CeilingError("induced pre-topology enumerates all subsets; carrier too large");
    // Minimal sections per point are all that matter.
    std::vector<std::vector<std::uint64_t>> sections(n);
    for (Point x = 0; x < n; ++x) {
        std::vector<std::uint64_t> s;
        for (const Relation& u : mu.basis())
            s.push_back(u.section(x).bits());
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sections[x] = std::move(s);
    }
    std::vector<PointSet> opens;
    for (std::uint64_t g = 0; g < (std::uint64_t{1} << n); ++g) {
        bool open = true;
        for (std::uint64_t b = g; b && open; b &= b - 1) {
            const Point x = static_cast<Point>(std::countr_zero(b));
            open = std::any_of(sections[x].begin(), sections[x].end(), [&](std::uint64_t s) { return (s & ~g) == 0; });
        }
        if (open)
            opens.emplace_back(n, g);
    }
    return PreTopology(mu.carrier(), std::move(opens));
}

std::vector<PointSet> neighborhood_prebase(const PreUniformity& mu, Point x)
{
    mu.require_valid("neighborhood pre-base");
    if (x >= mu.size())
        throw PreconditionError("point out of range");
    const PreTopology tau = induced_pretopology(mu);
    std::vector<PointSet> out;
    for (const Relation& u : mu.basis())
        out.push_back(tau.interior(u.section(x)));
    return out;
}

namespace {

struct ProductOps
{
    const PreTopology& tau;
    unsigned n;
    PointSet interior(const Relation& r) const { return product_interior(tau, tau, r.as_product_set()); }
    Relation int_rel(const Relation& r) const { return Relation::from_product_set(n, interior(r)); }
    Relation cl_rel(const Relation& r) const
    {
        return Relation::from_product_set(n, product_closure(tau, tau, r.as_product_set()));
    }
};

} // namespace

std::pair<bool, bool> entourage_prebase_verdicts(const PreUniformity& mu)
{
    mu.require_valid("entourage pre-bases");
    const PreTopology tau = induced_pretopology(mu);
    const ProductOps ops{tau, mu.size()};
    // Closed members form a pre-base iff every basis U contains the closure
    // of some member, and closures of basis members are the smallest ones.
    bool closed = std::all_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& u) {
        return std::any_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& v) { return ops.cl_rel(v).subset_of(u); });
    });
    // The largest open subset of U is its interior.
    bool open = std::all_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& u) {
        const Relation i = ops.int_rel(u);
        return i.contains_diagonal() && mu.contains(i);
    });
    return {closed, open};
}

EntouragePrebases entourage_prebases(const PreUniformity& mu)
{
    EntouragePrebases out;
    std::tie(out.closed_is_prebase, out.open_is_prebase) = entourage_prebase_verdicts(mu);
    const PreTopology tau = induced_pretopology(mu);
    const ProductOps ops{tau, mu.size()};
    for (const Relation& r : mu.members()) {
        if (ops.cl_rel(r) == r)
            out.closed_members.push_back(r);
        if (ops.int_rel(r) == r)
            out.open_members.push_back(r);
    }
    return out;
}

std::pair<bool, bool> t0_criterion(const PreUniformity& mu)
{
    return {is_t0(induced_pretopology(mu)), mu.intersection() == Relation::diagonal(mu.size())};
}

std::size_t weight(const PreUniformity& mu)
{
    mu.require_valid("weight");
    return mu.basis().size();
}

const char* comparison_name(Comparison c)
{
    switch (c) {
    case Comparison::Finer: return "finer";
    case Comparison::Coarser: return "coarser";
    case Comparison::Equal: return "equal";
    case Comparison::Incomparable: return "incomparable";
    }
    return "?";
}

bool is_subfamily(const PreUniformity& small, const PreUniformity& large)
{
    if (small.size() != large.size())
        throw PreconditionError("pre-uniformities live on different carriers");
    return std::all_of(small.basis().begin(), small.basis().end(), [&](const Relation& v) { return large.contains(v); });
}

Comparison compare(const PreUniformity& mu1, const PreUniformity& mu2)
{
    const bool a = is_subfamily(mu2, mu1);
    const bool b = is_subfamily(mu1, mu2);
    if (a && b)
        return Comparison::Equal;
    if (a)
        return Comparison::Finer;
    if (b)
        return Comparison::Coarser;
    return Comparison::Incomparable;
}

PreUniformity sup(const std::vector<PreUniformity>& family)
{
    if (family.empty())
        throw PreconditionError("sup of an empty family");
    std::vector<Relation> all;
    for (const PreUniformity& mu : family) {
        if (mu.carrier() != family.front().carrier())
            throw PreconditionError("pre-uniformities live on different carriers");
        all.insert(all.end(), mu.basis().begin(), mu.basis().end());
    }
    return PreUniformity(family.front().carrier(), std::move(all));
}

GeneratedPreUniformity generate_from_prebase(const Carrier& carrier, const std::vector<Relation>& prebase,
                                             const PreTopology* target)
{
    if (prebase.empty())
        throw PreconditionError("empty prebase");
    const unsigned n = carrier.size();
    for (const Relation& v : prebase) {
        check_carrier(carrier, v);
        if (!v.contains_diagonal())
            throw AxiomError("prebase", rel_text(v) + " misses part of the diagonal");
    }
    for (const Relation& v : prebase)
        if (std::none_of(prebase.begin(), prebase.end(), [&](const Relation& u) { return u.inverse().subset_of(v); }))
            throw AxiomError("BU1", "no U with U^-1 inside " + rel_text(v));
    for (const Relation& v : prebase) {
        std::string tried;
        bool found = false;
        for (const Relation& u : prebase)
            for (const Relation& w : prebase) {
                Relation c = u.compose(w);
                if (c.subset_of(v))
                    found = true;
                else
                    tried += " " + rel_text(c);
            }
        if (!found)
            throw AxiomError("BU2", "no U o W inside " + rel_text(v) + "; compositions tried:" + tried);
    }
    Relation meet = Relation::full(n);
    for (const Relation& v : prebase)
        meet = meet & v;
    if (meet != Relation::diagonal(n))
        throw AxiomError("BU3", "intersection of the prebase is " + rel_text(meet));

    GeneratedPreUniformity out{PreUniformity(carrier, prebase), std::nullopt, std::nullopt};
    if (target) {
        if (target->size() != n)
            throw PreconditionError("target pre-topology lives on a different carrier");
        bool hyp = std::all_of(prebase.begin(), prebase.end(), [&](const Relation& v) {
            return is_open_in_product(*target, *target, v.as_product_set());
        });
        for (Point x = 0; x < n && hyp; ++x)
            for (PointSet g : target->minimal_open_neighborhoods(x))
                if (std::none_of(prebase.begin(), prebase.end(), [&](const Relation& v) { return v.section(x).subset_of(g); }))
                    hyp = false;
        out.hypothesis_holds = hyp;
        out.induces_target = induced_pretopology(out.mu) == *target;
    }
    return out;
}

// --- covers ----------------------------------------------------------------

bool is_cover(unsigned n, const Cover& c)
{
    PointSet u = PointSet::empty(n);
    for (PointSet b : c) {
        if (b.universe() != n)
            return false;
        u |= b;
    }
    return u.is_full();
}

Cover cover_of(const Relation& v)
{
    Cover c;
    for (Point x = 0; x < v.universe(); ++x)
        c.push_back(v.section(x));
    return c;
}

PointSet star(PointSet a, const Cover& cover)
{
    PointSet out = PointSet::empty(a.universe());
    for (PointSet b : cover)
        if (b.meets(a))
            out |= b;
    return out;
}

bool refines(const Cover& fine, const Cover& coarse)
{
    return std::all_of(fine.begin(), fine.end(), [&](PointSet b) {
        return std::any_of(coarse.begin(), coarse.end(), [&](PointSet a) { return b.subset_of(a); });
    });
}

bool is_star_refinement(const Cover& fine, const Cover& coarse)
{
    if (fine.empty() || coarse.empty())
        throw PreconditionError("star refinement needs covers");
    const unsigned n = fine.front().universe();
    if (!is_cover(n, fine) || !is_cover(n, coarse))
        throw PreconditionError("star refinement needs covers");
    Cover stars;
    for (PointSet b : fine)
        stars.push_back(star(b, fine));
    return refines(stars, coarse);
}

Relation cover_relation(const Cover& c)
{
    if (c.empty())
        throw PreconditionError("empty cover");
    Relation r(c.front().universe());
    for (PointSet a : c)
        r = r | Relation::rectangle(a, a);
    return r;
}

UcReport uc_check(unsigned n, const std::vector<Cover>& generators)
{
    if (generators.empty())
        throw PreconditionError("empty cover family");
    for (const Cover& c : generators)
        if (!is_cover(n, c))
            throw PreconditionError("family member is not a cover of the carrier");
    UcReport rep;
    // A coarsening of a generator is star-refined by whatever star-refines the
    // generator, so checking the generators decides UC2 for the whole family.
    rep.uc2 = true;
    for (std::size_t i = 0; i < generators.size() && rep.uc2; ++i)
        if (std::none_of(generators.begin(), generators.end(),
                         [&](const Cover& b) { return is_star_refinement(b, generators[i]); })) {
            rep.uc2 = false;
            rep.witness = "UC2: generator " + std::to_string(i) + " has no star refinement in the family";
        }
    rep.uc3 = true;
    for (Point x = 0; x < n && rep.uc3; ++x)
        for (Point y = x + 1; y < n; ++y) {
            const PointSet pair = PointSet::of(n, {x, y});
            bool separated = std::any_of(generators.begin(), generators.end(), [&](const Cover& c) {
                return std::none_of(c.begin(), c.end(), [&](PointSet a) { return pair.subset_of(a); });
            });
            if (!separated) {
                rep.uc3 = false;
                if (rep.witness.empty())
                    rep.witness = "UC3: points " + std::to_string(x) + " and " + std::to_string(y) + " share a block in every cover";
                break;
            }
        }
    return rep;
}

GeneratedPreUniformity generate_from_covers(const Carrier& carrier, const std::vector<Cover>& generators,
                                            const PreTopology* target)
{
    const unsigned n = carrier.size();
    const UcReport rep = uc_check(n, generators);
    if (!rep.holds())
        throw AxiomError("UC", rep.witness);
    std::vector<Relation> rels;
    for (const Cover& c : generators)
        rels.push_back(cover_relation(c));
    GeneratedPreUniformity out{PreUniformity(carrier, std::move(rels)), std::nullopt, std::nullopt};
    if (target) {
        if (target->size() != n)
            throw PreconditionError("target pre-topology lives on a different carrier");
        bool hyp = true;
        for (const Cover& c : generators)
            for (PointSet a : c)
                hyp = hyp && target->is_open(a);
        for (Point x = 0; x < n && hyp; ++x)
            for (PointSet g : target->minimal_open_neighborhoods(x))
                if (std::none_of(generators.begin(), generators.end(),
                                 [&](const Cover& c) { return star(PointSet::singleton(n, x), c).subset_of(g); }))
                    hyp = false;
        out.hypothesis_holds = hyp;
        out.induces_target = induced_pretopology(out.mu) == *target;
    }
    return out;
}

// --- maps --------------------------------------------------------------------

namespace {

void check_map(const PointMap& f, const PreUniformity& mu, const PreUniformity& nu)
{
    if (f.source != mu.size() || f.target != nu.size())
        throw PreconditionError("map does not match the carriers");
}

bool cover_is_preuniform(const Cover& c, const PreUniformity& mu)
{
    return std::any_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& m) { return refines(cover_of(m), c); });
}

} // namespace

bool is_preuniformly_continuous(const PointMap& f, const PreUniformity& mu, const PreUniformity& nu)
{
    check_map(f, mu, nu);
    return std::all_of(nu.basis().begin(), nu.basis().end(), [&](const Relation& F) {
        return std::any_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& m) { return f.image(m).subset_of(F); });
    });
}

std::array<bool, 4> continuity_formulations(const PointMap& f, const PreUniformity& mu, const PreUniformity& nu,
                                            const std::vector<Pseudometric>& samples)
{
    check_map(f, mu, nu);
    std::array<bool, 4> out{};
    out[0] = is_preuniformly_continuous(f, mu, nu);
    out[1] = std::all_of(nu.basis().begin(), nu.basis().end(), [&](const Relation& v) {
        const Relation pre = f.preimage(v);
        return std::any_of(mu.basis().begin(), mu.basis().end(), [&](const Relation& u) { return u.subset_of(pre); });
    });
    // Every pre-uniform cover of Y coarsens some C(V) with V in the basis of
    // nu, and preimages preserve coarsening.
    out[2] = std::all_of(nu.basis().begin(), nu.basis().end(), [&](const Relation& v) {
        Cover pulled;
        for (PointSet block : cover_of(v))
            pulled.push_back(f.preimage(block));
        return cover_is_preuniform(pulled, mu);
    });
    out[3] = true;
    for (const Pseudometric& rho : samples) {
        if (rho.size() != nu.size())
            throw PreconditionError("sample pseudometric lives on a different carrier");
        if (!is_preuniform_pseudometric(rho, nu))
            throw PreconditionError("sample pseudometric is not pre-uniform with respect to the target");
        out[3] = out[3] && is_preuniform_pseudometric(rho.pullback(f), mu);
    }
    return out;
}

// --- coreflection and products -----------------------------------------------

Coreflection coreflection(const PreUniformity& mu)
{
    mu.require_valid("coreflection");
    std::set<Relation> closed(mu.basis().begin(), mu.basis().end());
    std::vector<Relation> frontier(closed.begin(), closed.end());
    while (!frontier.empty()) {
        std::vector<Relation> next;
        for (const Relation& a : frontier)
            for (const Relation& b : mu.basis()) {
                Relation m = a & b;
                if (closed.insert(m).second)
                    next.push_back(m);
            }
        frontier = std::move(next);
    }
    PreUniformity star(mu.carrier(), std::vector<Relation>(closed.begin(), closed.end()));
    const Relation diag = Relation::diagonal(mu.size());
    const bool eq = (mu.intersection() == diag) == (star.intersection() == diag);
    return Coreflection{std::move(star), eq};
}

Relation cylinder(const Relation& r, unsigned left_size, unsigned right_size, bool left_coordinate)
{
    const unsigned n = left_size * right_size;
    if (n > kMaxRelationPoints)
        throw CeilingError("product carrier exceeds " + std::to_string(kMaxRelationPoints) + " points");
    if (r.universe() != (left_coordinate ? left_size : right_size))
        throw PreconditionError("relation does not live on the chosen coordinate");
    Relation out(n);
    for (Point p = 0; p < n; ++p)
        for (Point q = 0; q < n; ++q) {
            const bool rel = left_coordinate ? r.contains(p / right_size, q / right_size)
                                             : r.contains(p % right_size, q % right_size);
            if (rel)
                out.insert(p, q);
        }
    return out;
}

PreUniformity box_product(const PreUniformity& left, const PreUniformity& right)
{
    const unsigned a = left.size(), b = right.size();
    std::vector<Relation> gens;
    for (const Relation& u : left.basis())
        for (const Relation& v : right.basis())
            gens.push_back(cylinder(u, a, b, true) & cylinder(v, a, b, false));
    return PreUniformity(left.carrier().product(right.carrier()), std::move(gens));
}

ProductResult product(const PreUniformity& left, const PreUniformity& right)
{
    left.require_valid("product");
    right.require_valid("product");
    const unsigned a = left.size(), b = right.size();
    std::vector<Relation> gens;
    for (const Relation& u : left.basis())
        gens.push_back(cylinder(u, a, b, true));
    for (const Relation& v : right.basis())
        gens.push_back(cylinder(v, a, b, false));
    PreUniformity prod(left.carrier().product(right.carrier()), std::move(gens));

    std::vector<Point> p1(a * b), p2(a * b);
    for (Point p = 0; p < a * b; ++p) {
        p1[p] = p / b;
        p2[p] = p % b;
    }
    const bool proj = is_preuniformly_continuous(PointMap(a * b, a, p1), prod, left) &&
                      is_preuniformly_continuous(PointMap(a * b, b, p2), prod, right);
    PreUniformity core = coreflection(prod).star;
    const bool matches = core == box_product(coreflection(left).star, coreflection(right).star);
    return ProductResult{std::move(prod), std::move(core), proj, matches};
}

// --- total boundedness -------------------------------------------------------

bool is_dense(const Relation& u, PointSet a)
{
    for (Point x = 0; x < u.universe(); ++x)
        if (!u.section(x).meets(a))
            return false;
    return true;
}

namespace {

void require_member(const PreUniformity& mu, const Relation& u)
{
    if (!mu.contains(u))
        throw PreconditionError("relation is not a member of the pre-uniformity");
}

PointSet smallest_dense(const Relation& u)
{
    const unsigned n = u.universe();
    PointSet best = PointSet::full(n);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        PointSet a(n, s);
        if (a.count() < best.count() && is_dense(u, a))
            best = a;
    }
    return best;
}

} // namespace

TotalBoundedness totally_bounded(const PreUniformity& mu)
{
    mu.require_valid("total boundedness");
    if (mu.size() > 20)
        throw CeilingError("dense-set search enumerates all subsets; carrier too large");
    TotalBoundedness out;
    for (const Relation& u : mu.basis())
        out.dense_sets.emplace_back(u, smallest_dense(u));
    return out;
}

std::optional<Cover> square_cover(const PreUniformity& mu, const Relation& u)
{
    mu.require_valid("square cover");
    require_member(mu, u);
    const unsigned n = mu.size();
    if (n > 16)
        throw CeilingError("square cover search enumerates all subsets; carrier too large");
    // Maximal squares suffice for a smallest cover.
    std::vector<PointSet> squares;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
        PointSet a(n, s);
        if (Relation::rectangle(a, a).subset_of(u))
            squares.push_back(a);
    }
    std::vector<PointSet> maximal;
    for (PointSet a : squares)
        if (std::none_of(squares.begin(), squares.end(), [&](PointSet b) { return b != a && a.subset_of(b); }))
            maximal.push_back(a);

    Cover chosen;
    std::function<bool(PointSet, std::size_t, std::size_t)> dfs = [&](PointSet covered, std::size_t from, std::size_t left) {
        if (covered.is_full())
            return true;
        if (left == 0)
            return false;
        for (std::size_t i = from; i < maximal.size(); ++i) {
            if (maximal[i].subset_of(covered))
                continue;
            chosen.push_back(maximal[i]);
            if (dfs(covered | maximal[i], i + 1, left - 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    for (std::size_t k = 1; k <= n; ++k) {
        chosen.clear();
        if (dfs(PointSet::empty(n), 0, k))
            return chosen;
    }
    return std::nullopt;
}

// --- universal pre-uniformity ------------------------------------------------

UniversalResult universal_preuniformity(const PreTopology& tau, std::size_t basis_size_bound)
{
    if (!is_t0(tau))
        throw AxiomError("universal", "not T0 - no compatible pre-uniformity exists");
    const unsigned n = tau.size();
    const EntourageSpace space(n);
    std::vector<Relation> rel(space.count());
    for (std::uint32_t e = 0; e < space.count(); ++e)
        rel[e] = space.relation(e);

    std::vector<Relation> accumulated;
    std::size_t found = 0;
    std::vector<Relation> basis;
    space.for_each_antichain(basis_size_bound, [&](const std::vector<std::uint32_t>& idx) {
        basis.clear();
        for (auto i : idx)
            basis.push_back(rel[i]);
        const AxiomReport rep = check_axioms(tau.carrier(), basis);
        if (rep.is_preuniformity && induced_pretopology(PreUniformity(tau.carrier(), basis)) == tau) {
            ++found;
            accumulated.insert(accumulated.end(), basis.begin(), basis.end());
            accumulated = minimal_antichain(std::move(accumulated));
        }
        return true;
    });
    const bool complete = basis_size_bound >= space.width();
    if (found == 0)
        return UniversalResult{std::nullopt, complete, 0, false};
    PreUniformity mu(tau.carrier(), std::move(accumulated));
    const bool compatible = mu.valid() && induced_pretopology(mu) == tau;
    return UniversalResult{std::move(mu), complete, found, compatible};
}

} // namespace prelab
