#pragma once

// Pre-proximities: nearness predicates on pairs of subsets, stored as a
// 2^n x 2^n bit matrix (one 64-bit row per left subset, so n <= 6).

#include "prelab/preunif.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace prelab {

inline constexpr unsigned kMaxProximityPoints = 6;

class PreProximity
{
public:
    /// rows[A] has bit B set iff A is near B. No axioms are enforced.
    PreProximity(Carrier carrier, std::vector<std::uint64_t> rows);

    /// Smallest relation containing `near` that is symmetric and monotone in
    /// both arguments. `added` reports whether closing added pairs.
    static PreProximity from_near_pairs(const Carrier& carrier, const std::vector<std::pair<PointSet, PointSet>>& near,
                                        bool* added = nullptr);
    /// A near B iff A and B meet.
    static PreProximity discrete(const Carrier& carrier);
    /// A near B iff both are nonempty.
    static PreProximity nonempty_pairs(const Carrier& carrier);

    const Carrier& carrier() const noexcept { return carrier_; }
    unsigned size() const noexcept { return carrier_.size(); }
    std::size_t subsets() const noexcept { return std::size_t{1} << size(); }
    const std::vector<std::uint64_t>& rows() const noexcept { return rows_; }

    bool near(PointSet a, PointSet b) const { return (rows_[a.bits()] >> b.bits()) & 1u; }
    bool far(PointSet a, PointSet b) const { return !near(a, b); }

    /// Every near pair (A,B), in row-major order.
    std::vector<std::pair<PointSet, PointSet>> near_pairs() const;

    bool operator==(const PreProximity& o) const { return rows_ == o.rows_ && size() == o.size(); }
    /// Every near pair of this is near in `o`.
    bool subset_of(const PreProximity& o) const;

private:
    Carrier carrier_;
    std::vector<std::uint64_t> rows_;
};

enum class PpAxiom { PP1, PP2, PP3, PP4, PP5, PP6 };
const char* pp_axiom_name(PpAxiom a);

struct PpReport
{
    /// Indexed by PpAxiom.
    std::array<bool, 6> holds{};
    std::array<std::string, 6> witness;
    /// Consequences: meeting sets are near; the empty set is far from
    /// everything; monotone in both arguments.
    std::array<bool, 3> consequences{};

    bool is_preproximity() const { return holds[0] && holds[1] && holds[2] && holds[3] && holds[4]; }
    bool is_proximity() const { return is_preproximity() && holds[5]; }
    bool operator[](PpAxiom a) const { return holds[static_cast<std::size_t>(a)]; }
};

PpReport check_pp_axioms(const PreProximity& delta);

/// Throws AxiomError naming `what` when PP1-PP5 fail.
void require_preproximity(const PreProximity& delta, const char* what);

/// c(A) = {x : {x} near A}, indexed by subset bits. Total.
std::vector<PointSet> closure_map(const PreProximity& delta);

struct ClosureReport
{
    std::vector<PointSet> closure;
    /// c(empty) = empty; extensive; idempotent; monotone.
    bool a = false, b = false, c = false, d = false;
    /// B far from A implies B far from c(A).
    bool far_from_closure = false;
    PreTopology tau;
    bool t1 = false;
};

/// The closure operator and the pre-topology {U : c(X - U) = X - U}.
/// Requires PP1-PP5.
ClosureReport closure_operator(const PreProximity& delta);
PreTopology induced_pretopology(const PreProximity& delta);

/// A near B iff every basis member meets A x B. Requires a valid mu.
PreProximity delta_from_preuniformity(const PreUniformity& mu);

// --- delta-neighbourhoods ------------------------------------------------------

struct NbhdRelation
{
    Carrier carrier;
    /// ll[A] has bit B set iff A << B.
    std::vector<std::uint64_t> ll;

    bool holds(PointSet a, PointSet b) const { return (ll[a.bits()] >> b.bits()) & 1u; }
    bool operator==(const NbhdRelation& o) const { return ll == o.ll; }
};

/// A << B iff A is far from X - B.
NbhdRelation nbhd_relation(const PreProximity& delta);

struct PsiReport
{
    std::array<bool, 6> holds{};
    std::array<std::string, 6> witness;
    bool first_five() const { return holds[0] && holds[1] && holds[2] && holds[3] && holds[4]; }
};

/// PSI1-PSI6, with opens and closures taken from the relation A far B iff
/// A << X - B.
PsiReport check_psi(const NbhdRelation& ll);

/// A far B iff A << X - B. Throws AxiomError when PSI1-PSI5 fail.
PreProximity delta_from_ll(const NbhdRelation& ll);

// --- uniform side --------------------------------------------------------------

/// X x X - A x B.
Relation t_set(PointSet a, PointSet b);

/// Up-closure of {T(A,B) : A far B}. Requires PP1-PP5.
PreUniformity mu_delta(const PreProximity& delta);

struct TotallyBoundedReflection
{
    PreUniformity mu_w;
    bool equals_mu = false;
};

TotallyBoundedReflection totally_bounded_reflection(const PreUniformity& mu);

/// A near B iff for every finite cover of A and of B by subsets of A and B
/// there are blocks A', B' with A' near_i B' for every i. n <= 3.
PreProximity sup_preproximities(const std::vector<PreProximity>& family);

/// `candidate` lies below every member of `family` and contains every
/// pre-proximity in `pool` that does.
bool is_coarsest_common_refinement(const PreProximity& candidate, const std::vector<PreProximity>& family,
                                   const std::vector<PreProximity>& pool);

/// A near B iff cl(A) and cl(B) meet. Throws AxiomError unless tau is
/// normal and Hausdorff.
PreProximity finest_compatible(const PreTopology& tau);

/// The indexed cover has a cover {B_i} of X with B_i << A_i. Throws on
/// non-covers.
bool is_delta_preuniform_cover(const std::vector<PointSet>& cover, const PreProximity& delta);

/// Every delta-pre-uniform cover has a block meeting both A and B.
bool far_pair_criterion(const PreProximity& delta, PointSet a, PointSet b);

/// Restriction to subsets of E, on a carrier carrying E's labels.
PreProximity subspace(const PreProximity& delta, PointSet e);
/// Traces {U n E : U open}, on E's carrier.
PreTopology relativize(const PreTopology& tau, PointSet e);
/// Basis {U n (E x E)}, on E's carrier.
PreUniformity restrict_preuniformity(const PreUniformity& mu, PointSet e);

} // namespace prelab
