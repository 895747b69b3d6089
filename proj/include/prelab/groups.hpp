#pragma once

#include "prelab/preunif.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prelab {

/// A finite group given by its Cayley table.
struct GroupTable
{
    Carrier carrier;
    std::vector<std::vector<Point>> mul;
    std::vector<Point> inv;
    Point e = 0;

    /// Validates associativity, identity and inverses; derives e and inv.
    static GroupTable from_table(Carrier carrier, std::vector<std::vector<Point>> mul);
    static GroupTable cyclic(unsigned n);
    static GroupTable klein();
    static GroupTable symmetric3();

    unsigned size() const noexcept { return carrier.size(); }
    Point operator()(Point x, Point y) const { return mul[x][y]; }
    PointSet translate(Point x, PointSet u) const;
    PointSet inverse(PointSet u) const;
    PointSet product(PointSet u, PointSet v) const;
};

/// Groups of order 1..4 up to isomorphism: Z1, Z2, Z3, Z4, Z2 x Z2.
std::vector<GroupTable> small_groups();

/// Why multiplication or inversion fails to be pre-continuous, if it does.
std::optional<std::string> pretopological_group_violation(const GroupTable& g, const PreTopology& tau);
bool is_pretopological_group(const GroupTable& g, const PreTopology& tau);

/// A pre-topological group whose family `base` of opens at e is a
/// neighbourhood pre-base there, consists of symmetric sets, and has some
/// V with V V inside U for every U. Throws when a member is not open or
/// misses e.
bool is_strongly_pretopological_group(const GroupTable& g, const PreTopology& tau, const std::vector<PointSet>& base);

struct GroupPipeline
{
    std::vector<Cover> covers;
    UcReport uc;
    PreUniformity mu;
    bool strong = false;
    bool induces_tau = false;
    bool completely_regular = false;
};

/// Covers {xU : x in G} for U in the base, checked against UC1-UC3, turned
/// into a pre-uniformity and compared with tau. Throws AxiomError naming
/// the failing stage.
GroupPipeline group_preuniformity(const GroupTable& g, const PreTopology& tau, const std::vector<PointSet>& base);

} // namespace prelab
