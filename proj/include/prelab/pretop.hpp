#pragma once

#include "prelab/relcore.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace prelab {

/// A family of subsets closed under arbitrary unions (so always holding the
/// empty union) whose union is the whole carrier. Intersections of opens
/// need not be open.
class PreTopology
{
public:
    /// Validates `opens`; throws PreconditionError when the family is not a
    /// pre-topology on `carrier`.
    PreTopology(Carrier carrier, std::vector<PointSet> opens);

    /// All unions of subfamilies of `prebase`. Throws when the prebase does
    /// not cover the carrier.
    static PreTopology generate(const Carrier& carrier, const std::vector<PointSet>& prebase);
    static PreTopology discrete(const Carrier& carrier);
    static PreTopology indiscrete(const Carrier& carrier);

    const Carrier& carrier() const noexcept { return carrier_; }
    unsigned size() const noexcept { return carrier_.size(); }
    /// Opens in increasing bitmask order.
    const std::vector<PointSet>& opens() const noexcept { return opens_; }

    bool is_open(PointSet s) const;
    bool is_closed(PointSet s) const { return is_open(s.complement()); }
    bool is_discrete() const { return opens_.size() == (std::size_t{1} << size()); }

    /// Smallest closed superset.
    PointSet closure(PointSet s) const;
    /// Union of the opens contained in `s`.
    PointSet interior(PointSet s) const;
    std::vector<PointSet> closed_sets() const;
    /// Opens containing x that contain no smaller open containing x.
    std::vector<PointSet> minimal_open_neighborhoods(Point x) const;

    bool operator==(const PreTopology& o) const { return opens_ == o.opens_ && size() == o.size(); }

private:
    Carrier carrier_;
    std::vector<PointSet> opens_;
};

bool is_pretopology(unsigned n, const std::vector<PointSet>& family);

/// Union-closure of a family (always containing the empty union), sorted.
std::vector<PointSet> union_closure(unsigned n, const std::vector<PointSet>& family);

/// A total function between finite carriers.
struct PointMap
{
    unsigned source = 0;
    unsigned target = 0;
    std::vector<Point> values;

    PointMap() = default;
    PointMap(unsigned source_size, unsigned target_size, std::vector<Point> v);
    static PointMap identity(unsigned n);

    Point operator()(Point x) const { return values.at(x); }
    PointSet preimage(PointSet s) const;
    PointSet image(PointSet s) const;
    /// (f x f)(r) on the target carrier.
    Relation image(const Relation& r) const;
    /// (f x f)^{-1}(r) on the source carrier.
    Relation preimage(const Relation& r) const;
    /// this after `first`, i.e. x -> this(first(x)).
    PointMap after(const PointMap& first) const;
};

bool is_precontinuous(const PointMap& h, const PreTopology& source, const PreTopology& target);

/// Separation axioms as defined for pre-topologies. `regular` and
/// `completely_regular` include the T1 conjunct; `normal` does not.
struct SeparationProfile
{
    bool t0 = false;
    bool t1 = false;
    bool t2 = false;
    bool regular = false;
    bool completely_regular = false;
    bool normal = false;

    bool operator==(const SeparationProfile&) const = default;
};

SeparationProfile separation_profile(const PreTopology& tau);

bool is_t0(const PreTopology& tau);
bool is_t1(const PreTopology& tau);
bool is_hausdorff(const PreTopology& tau);
bool is_regular(const PreTopology& tau);
/// Decided by the two-valued criterion: a point z and a closed C not
/// containing z are functionally separated iff some open A with open
/// complement has z in A and misses C.
bool is_completely_regular(const PreTopology& tau);
bool is_normal(const PreTopology& tau);

/// A pair of disjoint closed sets without disjoint open neighborhoods.
std::optional<std::pair<PointSet, PointSet>> normality_counterexample(const PreTopology& tau);

/// Opens whose complements are open as well.
std::vector<PointSet> clopen_sets(const PreTopology& tau);

/// The pre-topology on the product carrier generated by open boxes U x V.
PreTopology product_pretopology(const PreTopology& left, const PreTopology& right);

/// Membership and operators of the box pre-topology without materializing
/// it; `s` lives on the product carrier (index x * right.size() + y).
bool is_open_in_product(const PreTopology& left, const PreTopology& right, PointSet s);
PointSet product_interior(const PreTopology& left, const PreTopology& right, PointSet s);
PointSet product_closure(const PreTopology& left, const PreTopology& right, PointSet s);

} // namespace prelab
