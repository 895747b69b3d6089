#include "prelab/entourages.hpp"

#include <bit>

namespace prelab {

EntourageSpace::EntourageSpace(unsigned n) : n_(n)
{
    if (n == 0 || n > kMaxN)
        throw CeilingError("entourage space supports 1.." + std::to_string(kMaxN) + " points, got " + std::to_string(n));
    // Row-major order of off-diagonal pairs keeps index order equal to code order.
    for (Point x = 0; x < n; ++x)
        for (Point y = 0; y < n; ++y)
            if (x != y)
                offdiag_.emplace_back(x, y);
    words_ = (count() + 63) / 64;
    incomparable_.assign(count() * words_, 0);
    for (std::uint32_t e = 0; e < count(); ++e)
        for (std::uint32_t f = e + 1; f < count(); ++f)
            if (!comparable(e, f))
                incomparable_[e * words_ + f / 64] |= std::uint64_t{1} << (f % 64);
}

Relation EntourageSpace::relation(std::uint32_t index) const
{
    Relation r = Relation::diagonal(n_);
    for (unsigned b = 0; b < bits(); ++b)
        if ((index >> b) & 1u)
            r.insert(offdiag_[b].first, offdiag_[b].second);
    return r;
}

std::uint32_t EntourageSpace::index(const Relation& r) const
{
    if (r.universe() != n_ || !r.contains_diagonal())
        throw PreconditionError("relation is not an entourage of this carrier");
    std::uint32_t idx = 0;
    for (unsigned b = 0; b < bits(); ++b)
        if (r.contains(offdiag_[b].first, offdiag_[b].second))
            idx |= 1u << b;
    return idx;
}

std::size_t EntourageSpace::width() const
{
    const unsigned m = bits();
    std::size_t c = 1;
    for (unsigned i = 1; i <= m / 2; ++i)
        c = c * (m - m / 2 + i) / i;
    return c;
}

bool EntourageSpace::for_each_antichain(std::size_t max_size,
                                        const std::function<bool(const std::vector<std::uint32_t>&)>& visit,
                                        const std::function<bool(std::uint32_t)>& first_filter) const
{
    if (max_size == 0)
        return true;
    std::vector<std::uint32_t> chosen;
    // candidates[d]: elements that may extend the antichain at depth d.
    std::vector<std::vector<std::uint64_t>> candidates(max_size + 1, std::vector<std::uint64_t>(words_, 0));

    // The filter applies to the first member only.
    std::vector<std::uint64_t> everything(words_, 0);
    for (std::uint32_t e = 0; e < count(); ++e)
        everything[e / 64] |= std::uint64_t{1} << (e % 64);
    auto& top = candidates[0];
    for (std::uint32_t e = 0; e < count(); ++e)
        if (!first_filter || first_filter(e))
            top[e / 64] |= std::uint64_t{1} << (e % 64);

    std::function<bool(std::size_t)> walk = [&](std::size_t depth) -> bool {
        const auto& cand = candidates[depth];
        for (std::size_t w = 0; w < words_; ++w) {
            for (std::uint64_t bitsleft = cand[w]; bitsleft; bitsleft &= bitsleft - 1) {
                const std::uint32_t e = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bitsleft));
                chosen.push_back(e);
                if (!visit(chosen))
                    return false;
                if (chosen.size() < max_size) {
                    auto& next = candidates[depth + 1];
                    bool any = false;
                    const std::uint64_t* inc = &incomparable_[e * words_];
                    for (std::size_t v = 0; v < words_; ++v) {
                        next[v] = (depth == 0 ? everything[v] : cand[v]) & inc[v];
                        any |= next[v] != 0;
                    }
                    if (any && !walk(depth + 1))
                        return false;
                }
                chosen.pop_back();
            }
        }
        return true;
    };
    return walk(0);
}

} // namespace prelab
