#include "prelab/relcore.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace prelab {

Carrier::Carrier(std::vector<std::string> labels) : labels_(std::move(labels))
{
    if (labels_.empty())
        throw PreconditionError("carrier must have at least one point");
    if (labels_.size() > kMaxPoints)
        throw PreconditionError("carrier exceeds " + std::to_string(kMaxPoints) + " points");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
        throw PreconditionError("carrier labels must be distinct");
}

Carrier Carrier::lettered(unsigned n)
{
    std::vector<std::string> labels;
    labels.reserve(n);
    for (unsigned i = 0; i < n; ++i)
        labels.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
    return Carrier(std::move(labels));
}

const std::string& Carrier::label(Point x) const
{
    if (x >= labels_.size())
        throw PreconditionError("point index " + std::to_string(x) + " out of range");
    return labels_[x];
}

std::optional<Point> Carrier::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<Point>(it - labels_.begin());
}

Carrier Carrier::product(const Carrier& other) const
{
    std::vector<std::string> labels;
    labels.reserve(labels_.size() * other.labels_.size());
    for (const auto& a : labels_)
        for (const auto& b : other.labels_)
            labels.push_back("(" + a + "," + b + ")");
    return Carrier(std::move(labels));
}

PointSet PointSet::singleton(unsigned n, Point x)
{
    if (x >= n)
        throw PreconditionError("point index " + std::to_string(x) + " out of range");
    return PointSet(n, std::uint64_t{1} << x);
}

PointSet PointSet::of(unsigned n, std::initializer_list<Point> points)
{
    PointSet s = empty(n);
    for (Point p : points)
        s.insert(p);
    return s;
}

void PointSet::insert(Point x)
{
    if (x >= n_)
        throw PreconditionError("point index " + std::to_string(x) + " out of range");
    bits_ |= std::uint64_t{1} << x;
}

void PointSet::erase(Point x)
{
    if (x >= n_)
        throw PreconditionError("point index " + std::to_string(x) + " out of range");
    bits_ &= ~(std::uint64_t{1} << x);
}

std::vector<Point> PointSet::points() const
{
    std::vector<Point> out;
    out.reserve(count());
    for_each([&](Point p) { out.push_back(p); });
    return out;
}

std::vector<PointSet> all_subsets(unsigned n)
{
    if (n > 24)
        throw CeilingError("refusing to list all subsets of a " + std::to_string(n) + "-point carrier");
    std::vector<PointSet> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
        out.emplace_back(n, b);
    return out;
}

// ---------------------------------------------------------------------------

Relation::Relation(unsigned n) : n_(static_cast<std::uint8_t>(n))
{
    if (n == 0 || n > kMaxRelationPoints)
        throw PreconditionError("relation carrier size " + std::to_string(n) + " unsupported");
}

Relation Relation::diagonal(unsigned n)
{
    Relation r(n);
    for (Point x = 0; x < n; ++x)
        r.rows_[x] = static_cast<std::uint16_t>(1u << x);
    return r;
}

Relation Relation::full(unsigned n)
{
    Relation r(n);
    for (Point x = 0; x < n; ++x)
        r.rows_[x] = static_cast<std::uint16_t>(PointSet::mask(n));
    return r;
}

Relation Relation::from_pairs(unsigned n, const std::vector<std::pair<Point, Point>>& pairs)
{
    Relation r(n);
    for (auto [x, y] : pairs)
        r.insert(x, y);
    return r;
}

Relation Relation::from_code(unsigned n, std::uint64_t code)
{
    if (n > 8)
        throw PreconditionError("relation codes need n <= 8");
    Relation r(n);
    for (Point x = 0; x < n; ++x)
        r.rows_[x] = static_cast<std::uint16_t>((code >> (x * n)) & PointSet::mask(n));
    return r;
}

Relation Relation::rectangle(PointSet a, PointSet b)
{
    if (a.universe() != b.universe())
        throw PreconditionError("rectangle sides live on different carriers");
    Relation r(a.universe());
    a.for_each([&](Point x) { r.rows_[x] = static_cast<std::uint16_t>(b.bits()); });
    return r;
}

bool Relation::contains(Point x, Point y) const
{
    if (x >= n_ || y >= n_)
        throw PreconditionError("pair index out of range");
    return (rows_[x] >> y) & 1u;
}

void Relation::insert(Point x, Point y)
{
    if (x >= n_ || y >= n_)
        throw PreconditionError("pair index out of range");
    rows_[x] = static_cast<std::uint16_t>(rows_[x] | (1u << y));
}

void Relation::erase(Point x, Point y)
{
    if (x >= n_ || y >= n_)
        throw PreconditionError("pair index out of range");
    rows_[x] = static_cast<std::uint16_t>(rows_[x] & ~(1u << y));
}

PointSet Relation::section(Point x) const
{
    if (x >= n_)
        throw PreconditionError("point index " + std::to_string(x) + " out of range");
    return PointSet(n_, rows_[x]);
}

void Relation::set_row(Point x, PointSet s)
{
    if (x >= n_ || s.universe() != n_)
        throw PreconditionError("row does not fit the relation");
    rows_[x] = static_cast<std::uint16_t>(s.bits());
}

Relation Relation::inverse() const
{
    Relation r;
    r.n_ = n_;
    for (Point x = 0; x < n_; ++x)
        for (std::uint32_t b = rows_[x]; b; b &= b - 1)
            r.rows_[std::countr_zero(b)] |= static_cast<std::uint16_t>(1u << x);
    return r;
}

Relation Relation::compose(const Relation& b) const
{
    check_same(b);
    Relation r;
    r.n_ = n_;
    for (Point x = 0; x < n_; ++x) {
        std::uint16_t acc = 0;
        for (std::uint32_t m = rows_[x]; m; m &= m - 1)
            acc |= b.rows_[std::countr_zero(m)];
        r.rows_[x] = acc;
    }
    return r;
}

bool Relation::contains_diagonal() const
{
    for (Point x = 0; x < n_; ++x)
        if (!((rows_[x] >> x) & 1u))
            return false;
    return true;
}

bool Relation::subset_of(const Relation& o) const noexcept
{
    for (Point x = 0; x < n_; ++x)
        if (rows_[x] & ~o.rows_[x])
            return false;
    return true;
}

bool Relation::meets(const Relation& o) const noexcept
{
    for (Point x = 0; x < n_; ++x)
        if (rows_[x] & o.rows_[x])
            return true;
    return false;
}

bool Relation::is_empty() const noexcept
{
    return std::all_of(rows_.begin(), rows_.begin() + n_, [](auto r) { return r == 0; });
}

unsigned Relation::count() const noexcept
{
    unsigned c = 0;
    for (Point x = 0; x < n_; ++x)
        c += static_cast<unsigned>(std::popcount(rows_[x]));
    return c;
}

Relation Relation::operator|(const Relation& o) const
{
    check_same(o);
    Relation r = *this;
    for (Point x = 0; x < n_; ++x)
        r.rows_[x] |= o.rows_[x];
    return r;
}

Relation Relation::operator&(const Relation& o) const
{
    check_same(o);
    Relation r = *this;
    for (Point x = 0; x < n_; ++x)
        r.rows_[x] &= o.rows_[x];
    return r;
}

Relation Relation::operator-(const Relation& o) const
{
    check_same(o);
    Relation r = *this;
    for (Point x = 0; x < n_; ++x)
        r.rows_[x] = static_cast<std::uint16_t>(r.rows_[x] & ~o.rows_[x]);
    return r;
}

Relation Relation::complement() const
{
    return full(n_) - *this;
}

PointSet Relation::image(PointSet s) const
{
    std::uint64_t acc = 0;
    s.for_each([&](Point x) { acc |= rows_[x]; });
    return PointSet(n_, acc);
}

std::vector<std::pair<Point, Point>> Relation::pairs() const
{
    std::vector<std::pair<Point, Point>> out;
    for (Point x = 0; x < n_; ++x)
        for (Point y = 0; y < n_; ++y)
            if ((rows_[x] >> y) & 1u)
                out.emplace_back(x, y);
    return out;
}

PointSet Relation::as_product_set() const
{
    if (static_cast<unsigned>(n_) * n_ > kMaxPoints)
        throw PreconditionError("product carrier too large");
    std::uint64_t bits = 0;
    for (Point x = 0; x < n_; ++x)
        bits |= static_cast<std::uint64_t>(rows_[x]) << (x * n_);
    return PointSet(n_ * n_, bits);
}

Relation Relation::from_product_set(unsigned n, PointSet s)
{
    if (s.universe() != n * n)
        throw PreconditionError("subset does not live on the product carrier");
    Relation r(n);
    for (Point x = 0; x < n; ++x)
        r.rows_[x] = static_cast<std::uint16_t>((s.bits() >> (x * n)) & PointSet::mask(n));
    return r;
}

std::uint64_t Relation::code() const
{
    if (n_ > 8)
        throw PreconditionError("relation codes need n <= 8");
    return as_product_set().bits();
}

std::strong_ordering Relation::operator<=>(const Relation& o) const noexcept
{
    if (auto c = n_ <=> o.n_; c != 0)
        return c;
    for (int x = static_cast<int>(n_) - 1; x >= 0; --x)
        if (auto c = rows_[x] <=> o.rows_[x]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

void Relation::check_same(const Relation& o) const
{
    if (n_ != o.n_)
        throw PreconditionError("relations live on different carriers");
}

Relation relabel(const Relation& r, const std::vector<Point>& perm)
{
    Relation out(r.universe());
    for (auto [x, y] : r.pairs())
        out.insert(perm[x], perm[y]);
    return out;
}

PointSet relabel(PointSet s, const std::vector<Point>& perm)
{
    PointSet out = PointSet::empty(s.universe());
    s.for_each([&](Point x) { out.insert(perm[x]); });
    return out;
}

std::vector<std::vector<Point>> all_permutations(unsigned n)
{
    std::vector<Point> p(n);
    std::iota(p.begin(), p.end(), Point{0});
    std::vector<std::vector<Point>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::string format_set(const Carrier& c, PointSet s)
{
    std::string out = "{";
    bool first = true;
    s.for_each([&](Point x) {
        if (!first)
            out += ",";
        out += c.label(x);
        first = false;
    });
    return out + "}";
}

std::string format_relation(const Carrier& c, const Relation& r)
{
    std::string out = "{";
    bool first = true;
    for (auto [x, y] : r.pairs()) {
        if (!first)
            out += ",";
        out += "(" + c.label(x) + "," + c.label(y) + ")";
        first = false;
    }
    return out + "}";
}

} // namespace prelab
