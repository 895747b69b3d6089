#pragma once

// The poset of entourages (relations containing the diagonal) on an
// n-point carrier, indexed by their off-diagonal bits, and a depth-first
// walk over its antichains in lexicographic order of sorted index lists.

#include "prelab/relcore.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace prelab {

class EntourageSpace
{
public:
    static constexpr unsigned kMaxN = 4;

    explicit EntourageSpace(unsigned n);

    unsigned points() const noexcept { return n_; }
    /// Number of off-diagonal positions.
    unsigned bits() const noexcept { return static_cast<unsigned>(offdiag_.size()); }
    std::size_t count() const noexcept { return std::size_t{1} << bits(); }

    Relation relation(std::uint32_t index) const;
    /// Throws if `r` misses part of the diagonal.
    std::uint32_t index(const Relation& r) const;

    static bool comparable(std::uint32_t a, std::uint32_t b) noexcept { return (a & b) == a || (a & b) == b; }

    /// Largest antichain size (a middle binomial coefficient).
    std::size_t width() const;

    /// Calls visit(members) for every nonempty antichain with at most
    /// `max_size` members, in lexicographic order. Only antichains whose
    /// first member satisfies `first_filter` are walked. Returning false
    /// from `visit` stops the walk; the function then returns false.
    bool for_each_antichain(std::size_t max_size,
                            const std::function<bool(const std::vector<std::uint32_t>&)>& visit,
                            const std::function<bool(std::uint32_t)>& first_filter = {}) const;

private:
    unsigned n_;
    std::vector<std::pair<Point, Point>> offdiag_;
    std::size_t words_;
    // incomparable_[e * words_ + w]: members greater than e and incomparable with it.
    std::vector<std::uint64_t> incomparable_;
};

} // namespace prelab
