#pragma once

// Pre-uniformities on finite carriers.
//
// An upward-closed family of entourages is stored as its antichain of
// minimal members. Each axiom on the up-closure reduces to a condition on
// the antichain because inverse, composition and intersection are monotone:
//
//   (U2)  every basis V contains the inverse of some basis U
//   (U3)  every basis V contains U o W for some basis U, W
//   (U5)  the intersection of the basis is the diagonal
//   (U6)  every pairwise intersection of basis members contains a member
//   (U2') every basis V contains B u B^-1 for some basis B
//   (U3') every basis V contains W o W for some basis W

#include "prelab/pretop.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace prelab {

class Pseudometric;

enum class Axiom { U1, U2, U3, U4, U5, U6, U2Sym, U3Strong };

inline constexpr std::array<Axiom, 8> kAllAxioms = {Axiom::U1, Axiom::U2, Axiom::U3, Axiom::U4,
                                                    Axiom::U5, Axiom::U6, Axiom::U2Sym, Axiom::U3Strong};

const char* axiom_name(Axiom a);

struct AxiomVerdict
{
    Axiom axiom = Axiom::U1;
    bool holds = true;
    /// Human-readable counterexample; empty when the axiom holds.
    std::string witness;
    /// Relations involved in the counterexample (the violating entourage
    /// first, then e.g. every composition that was tried).
    std::vector<Relation> witness_relations;
};

struct AxiomReport
{
    std::array<AxiomVerdict, 8> verdicts;

    bool is_preuniformity = false; // U1-U5
    bool symmetric = false;        // + U2'
    bool strong = false;           // + U3'
    bool almost = false;           // symmetric and strong
    bool uniform = false;          // almost + U6

    const AxiomVerdict& operator[](Axiom a) const { return verdicts[static_cast<std::size_t>(a)]; }
    /// "uniform", "almost uniform", "strong", "symmetric", "pre-uniformity" or "invalid".
    std::string classification() const;
};

/// Evaluate every axiom on the up-closure of `basis`. Throws on an empty
/// basis or on relations that do not live on `carrier`.
AxiomReport check_axioms(const Carrier& carrier, const std::vector<Relation>& basis);

/// Minimal members of a family of relations, sorted and de-duplicated.
std::vector<Relation> minimal_antichain(std::vector<Relation> family);

class PreUniformity
{
public:
    /// Up-closure of `generators`. Every generator must contain the
    /// diagonal; the axioms are evaluated but not enforced.
    PreUniformity(Carrier carrier, std::vector<Relation> generators);

    static PreUniformity discrete(const Carrier& carrier);

    const Carrier& carrier() const noexcept { return carrier_; }
    unsigned size() const noexcept { return carrier_.size(); }
    const std::vector<Relation>& basis() const noexcept { return basis_; }
    const AxiomReport& report() const noexcept { return report_; }
    bool valid() const noexcept { return report_.is_preuniformity; }

    /// Throws AxiomError naming `what` when U1-U5 fail.
    void require_valid(const char* what) const;

    /// Some basis member is contained in `v`.
    bool contains(const Relation& v) const;
    /// Intersection of the whole family.
    Relation intersection() const;
    /// Every member of the up-closure (n <= 4).
    std::vector<Relation> members() const;

    bool operator==(const PreUniformity& o) const { return basis_ == o.basis_; }

private:
    Carrier carrier_;
    std::vector<Relation> basis_;
    AxiomReport report_;
};

inline bool member(const PreUniformity& mu, const Relation& v) { return mu.contains(v); }

/// {G : every x in G has a basis U with U[x] inside G}. Total: defined for
/// any up-closed family.
PreTopology induced_pretopology(const PreUniformity& mu);

/// {interior(U[x]) : U in basis}, one entry per basis member.
std::vector<PointSet> neighborhood_prebase(const PreUniformity& mu, Point x);

struct EntouragePrebases
{
    /// Members of the up-closure closed (resp. open) in tau(mu) x tau(mu).
    std::vector<Relation> closed_members;
    std::vector<Relation> open_members;
    bool closed_is_prebase = false;
    bool open_is_prebase = false;
};

EntouragePrebases entourage_prebases(const PreUniformity& mu);
/// The two verdicts of entourage_prebases without listing the families.
std::pair<bool, bool> entourage_prebase_verdicts(const PreUniformity& mu);

/// (tau(mu) is T0, intersection of mu is the diagonal). Requires only
/// U1-U4 of the family.
std::pair<bool, bool> t0_criterion(const PreUniformity& mu);

/// Size of the least pre-base, i.e. of the minimal antichain.
std::size_t weight(const PreUniformity& mu);

enum class Comparison { Finer, Coarser, Equal, Incomparable };
const char* comparison_name(Comparison c);

/// Finer means mu1 contains mu2 as a family.
Comparison compare(const PreUniformity& mu1, const PreUniformity& mu2);
bool is_subfamily(const PreUniformity& small, const PreUniformity& large);

/// Least upper bound: the union of the families.
PreUniformity sup(const std::vector<PreUniformity>& family);

struct GeneratedPreUniformity
{
    PreUniformity mu;
    /// When a target pre-topology was supplied: whether the compatibility
    /// hypothesis holds (members open in X x X, sections inside every
    /// open neighbourhood) and whether tau(mu) equals the target.
    std::optional<bool> hypothesis_holds;
    std::optional<bool> induces_target;
};

/// Checks (BU1)-(BU3) on `prebase` (throwing AxiomError with the witness
/// otherwise) and returns its up-closure.
GeneratedPreUniformity generate_from_prebase(const Carrier& carrier, const std::vector<Relation>& prebase,
                                             const PreTopology* target = nullptr);

// --- covers ----------------------------------------------------------------

using Cover = std::vector<PointSet>;

bool is_cover(unsigned n, const Cover& c);
/// {V[x]} indexed by x.
Cover cover_of(const Relation& v);
/// Union of the blocks of `cover` meeting `a`.
PointSet star(PointSet a, const Cover& cover);
/// Every block of `fine` refines into some block of `coarse`.
bool refines(const Cover& fine, const Cover& coarse);
/// {st(B, fine) : B in fine} refines `coarse`. Throws on non-covers.
bool is_star_refinement(const Cover& fine, const Cover& coarse);
/// Union of A x A over the blocks.
Relation cover_relation(const Cover& c);

struct UcReport
{
    bool uc1 = true; // implicit: the family is read up to coarsening
    bool uc2 = false;
    bool uc3 = false;
    std::string witness;
    bool holds() const { return uc1 && uc2 && uc3; }
};

/// (UC1)-(UC3) for the collection of covers having a refinement in `generators`.
UcReport uc_check(unsigned n, const std::vector<Cover>& generators);

/// Up-closure of {cover_relation(A) : A in generators}; throws AxiomError
/// when UC fails. With a target, also checks that the generators are open
/// covers whose stars st(x, A) shrink inside every open neighbourhood.
GeneratedPreUniformity generate_from_covers(const Carrier& carrier, const std::vector<Cover>& generators,
                                            const PreTopology* target = nullptr);

// --- pseudometrics ----------------------------------------------------------

/// Up-closure of the balls {rho < 2^-i}, i >= 1. Throws AxiomError naming a
/// pair of distinct points at distance 0 in every member of the family.
PreUniformity generate_from_pseudometrics(const std::vector<Pseudometric>& family);

// --- maps --------------------------------------------------------------------

/// Every basis F of nu contains (f x f)(M) for some basis M of mu.
bool is_preuniformly_continuous(const PointMap& f, const PreUniformity& mu, const PreUniformity& nu);

/// The four formulations of pre-uniform continuity, evaluated separately:
/// entourage form, pre-base form, cover form, and pseudometric form
/// (the latter over the pseudometrics in `samples`, which must be
/// pre-uniform with respect to nu).
std::array<bool, 4> continuity_formulations(const PointMap& f, const PreUniformity& mu, const PreUniformity& nu,
                                            const std::vector<Pseudometric>& samples);

// --- coreflection, products, boundedness ------------------------------------

struct Coreflection
{
    PreUniformity star;
    /// intersection(mu) is the diagonal iff intersection(star) is.
    bool intersection_equivalence = false;
};

/// Up-closure of all finite intersections of members.
Coreflection coreflection(const PreUniformity& mu);

struct ProductResult
{
    /// Generated by single-coordinate cylinders.
    PreUniformity product;
    PreUniformity product_coreflection;
    bool projections_uniformly_continuous = false;
    /// coreflection(product) equals the box-form product of the two coreflections.
    bool coreflection_matches = false;
};

ProductResult product(const PreUniformity& left, const PreUniformity& right);
/// {(p,q) : (p_i, q_i) in U_i for i in coords} for the cylinder over one coordinate.
Relation cylinder(const Relation& r, unsigned left_size, unsigned right_size, bool left_coordinate);
/// Up-closure of {cyl(U,1) n cyl(V,2)}: sections B[(x,y)] = U[x] x V[y].
PreUniformity box_product(const PreUniformity& left, const PreUniformity& right);

struct TotalBoundedness
{
    bool totally_bounded = true;
    /// Per basis member, a smallest U-dense set.
    std::vector<std::pair<Relation, PointSet>> dense_sets;
};

bool is_dense(const Relation& u, PointSet a);
TotalBoundedness totally_bounded(const PreUniformity& mu);
/// A smallest cover by sets A with A x A inside `u`; nullopt when none exists.
std::optional<Cover> square_cover(const PreUniformity& mu, const Relation& u);

struct UniversalResult
{
    /// Empty when no compatible pre-uniformity was found within the bound.
    std::optional<PreUniformity> mu;
    /// True when every candidate basis was examined, false when the basis
    /// size bound cut the search short (the result is then a lower bound).
    bool complete = false;
    std::size_t compatible_found = 0;
    /// tau(mu) was re-checked against tau for the union.
    bool union_compatible = false;
};

/// Union of all pre-uniformities inducing `tau`, by a bounded search over
/// bases with at most `basis_size_bound` members. Throws AxiomError when
/// tau is not T0.
UniversalResult universal_preuniformity(const PreTopology& tau, std::size_t basis_size_bound);

} // namespace prelab
