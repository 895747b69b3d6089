#pragma once

// Points, subsets and binary relations over a finite carrier.
//
// Points are indices 0..n-1. A PointSet is a bitmask (n <= 64); a Relation
// is a dense boolean matrix stored row by row (n <= 16), so composition is a
// boolean matrix product computed a row at a time.

#include "prelab/error.hpp"

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prelab {

inline constexpr unsigned kMaxPoints = 64;
inline constexpr unsigned kMaxRelationPoints = 16;

using Point = unsigned;

/// Display labels for the points of a finite set. Only the size matters to
/// the algebra; labels are used by the interchange format and reports.
class Carrier
{
public:
    Carrier() = default;
    explicit Carrier(std::vector<std::string> labels);

    /// Carrier with labels a, b, c, ... (or p0, p1, ... past 26 points).
    static Carrier lettered(unsigned n);

    unsigned size() const noexcept { return static_cast<unsigned>(labels_.size()); }
    const std::string& label(Point x) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<Point> index_of(const std::string& label) const;

    /// Carrier of pairs (x,y) indexed x * other.size() + y.
    Carrier product(const Carrier& other) const;

    bool operator==(const Carrier&) const = default;

private:
    std::vector<std::string> labels_;
};

class PointSet
{
public:
    constexpr PointSet() = default;
    constexpr PointSet(unsigned n, std::uint64_t bits) : bits_(bits & mask(n)), n_(static_cast<std::uint8_t>(n)) {}

    static constexpr PointSet empty(unsigned n) { return PointSet(n, 0); }
    static constexpr PointSet full(unsigned n) { return PointSet(n, mask(n)); }
    static PointSet singleton(unsigned n, Point x);
    static PointSet of(unsigned n, std::initializer_list<Point> points);

    constexpr unsigned universe() const noexcept { return n_; }
    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool contains(Point x) const noexcept { return x < n_ && ((bits_ >> x) & 1u); }
    constexpr bool is_empty() const noexcept { return bits_ == 0; }
    constexpr bool is_full() const noexcept { return bits_ == mask(n_); }
    unsigned count() const noexcept { return static_cast<unsigned>(std::popcount(bits_)); }

    void insert(Point x);
    void erase(Point x);

    constexpr bool subset_of(PointSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    constexpr bool meets(PointSet other) const noexcept { return (bits_ & other.bits_) != 0; }

    constexpr PointSet operator|(PointSet o) const noexcept { return PointSet(n_, bits_ | o.bits_); }
    constexpr PointSet operator&(PointSet o) const noexcept { return PointSet(n_, bits_ & o.bits_); }
    constexpr PointSet operator-(PointSet o) const noexcept { return PointSet(n_, bits_ & ~o.bits_); }
    constexpr PointSet complement() const noexcept { return PointSet(n_, ~bits_); }
    PointSet& operator|=(PointSet o) noexcept { bits_ |= o.bits_; return *this; }
    PointSet& operator&=(PointSet o) noexcept { bits_ &= o.bits_; return *this; }

    std::vector<Point> points() const;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::uint64_t b = bits_; b; b &= b - 1)
            f(static_cast<Point>(std::countr_zero(b)));
    }

    constexpr bool operator==(const PointSet&) const = default;
    constexpr auto operator<=>(const PointSet& o) const noexcept { return bits_ <=> o.bits_; }

    static constexpr std::uint64_t mask(unsigned n) noexcept { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

private:
    std::uint64_t bits_ = 0;
    std::uint8_t n_ = 0;
};

/// All 2^n subsets of an n-point carrier, in increasing bitmask order.
std::vector<PointSet> all_subsets(unsigned n);

class Relation
{
public:
    Relation() = default;
    explicit Relation(unsigned n);

    static Relation diagonal(unsigned n);
    static Relation full(unsigned n);
    static Relation from_pairs(unsigned n, const std::vector<std::pair<Point, Point>>& pairs);
    /// Row-major bit code, bit x*n+y set iff (x,y) is in the relation. n <= 8.
    static Relation from_code(unsigned n, std::uint64_t code);
    /// A x B as a relation.
    static Relation rectangle(PointSet a, PointSet b);

    unsigned universe() const noexcept { return n_; }
    bool contains(Point x, Point y) const;
    void insert(Point x, Point y);
    void erase(Point x, Point y);

    /// The section A[x] = {y : (x,y) in A}.
    PointSet section(Point x) const;
    PointSet row(Point x) const noexcept { return PointSet(n_, rows_[x]); }
    void set_row(Point x, PointSet s);

    Relation inverse() const;
    /// (x,y) in A.compose(B) iff (x,z) in A and (z,y) in B for some z.
    Relation compose(const Relation& b) const;
    bool is_symmetric() const { return *this == inverse(); }
    bool contains_diagonal() const;

    bool subset_of(const Relation& o) const noexcept;
    bool meets(const Relation& o) const noexcept;
    bool is_empty() const noexcept;
    unsigned count() const noexcept;

    Relation operator|(const Relation& o) const;
    Relation operator&(const Relation& o) const;
    Relation operator-(const Relation& o) const;
    Relation complement() const;

    /// Image of a set: {y : (x,y) in A for some x in s}.
    PointSet image(PointSet s) const;

    std::vector<std::pair<Point, Point>> pairs() const;

    /// The relation as a subset of the product carrier (index x*n+y).
    PointSet as_product_set() const;
    static Relation from_product_set(unsigned n, PointSet s);

    std::uint64_t code() const;

    bool operator==(const Relation& o) const noexcept { return n_ == o.n_ && rows_ == o.rows_; }
    /// Numeric order of the row-major code (last row most significant).
    std::strong_ordering operator<=>(const Relation& o) const noexcept;

private:
    void check_same(const Relation& o) const;

    std::array<std::uint16_t, kMaxRelationPoints> rows_{};
    std::uint8_t n_ = 0;
};

/// Relabel points: result contains (perm[x], perm[y]) for every (x,y).
Relation relabel(const Relation& r, const std::vector<Point>& perm);
PointSet relabel(PointSet s, const std::vector<Point>& perm);

/// Every permutation of 0..n-1 in lexicographic order.
std::vector<std::vector<Point>> all_permutations(unsigned n);

std::string format_set(const Carrier& c, PointSet s);
std::string format_relation(const Carrier& c, const Relation& r);

} // namespace prelab
