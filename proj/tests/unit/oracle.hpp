#pragma once

// Brute-force reference implementations shared by the unit tests. They work
// on plain std containers so they share no code with the library.

#include "prelab/relcore.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pairs = std::set<std::pair<unsigned, unsigned>>;
using Set = std::set<unsigned>;

inline Pairs pairs_of(const prelab::Relation& r)
{
    Pairs out;
    for (unsigned x = 0; x < r.universe(); ++x)
        for (unsigned y = 0; y < r.universe(); ++y)
            if (r.contains(x, y))
                out.insert({x, y});
    return out;
}

inline Pairs compose(const Pairs& a, const Pairs& b)
{
    Pairs out;
    for (auto [x, z] : a)
        for (auto [z2, y] : b)
            if (z == z2)
                out.insert({x, y});
    return out;
}

inline Pairs inverse(const Pairs& a)
{
    Pairs out;
    for (auto [x, y] : a)
        out.insert({y, x});
    return out;
}

inline Set set_of(prelab::PointSet s)
{
    Set out;
    for (unsigned x = 0; x < s.universe(); ++x)
        if (s.contains(x))
            out.insert(x);
    return out;
}

inline prelab::Relation random_relation(unsigned n, std::mt19937_64& rng, double p = 0.4)
{
    std::bernoulli_distribution coin(p);
    prelab::Relation r(n);
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            if (coin(rng))
                r.insert(x, y);
    return r;
}

inline prelab::Relation random_entourage(unsigned n, std::mt19937_64& rng, double p = 0.4)
{
    return random_relation(n, rng, p) | prelab::Relation::diagonal(n);
}

/// Every family of subsets of an n-point set that is closed under unions
/// and covers the set, by filtering all 2^(2^n) families. n <= 3.
inline std::vector<std::vector<std::uint64_t>> all_pretopologies(unsigned n)
{
    const unsigned subsets = 1u << n;
    const std::uint64_t full = subsets - 1;
    std::vector<std::vector<std::uint64_t>> out;
    for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
        if (!((fam >> 0) & 1) || !((fam >> full) & 1))
            continue;
        bool closed = true;
        for (unsigned a = 0; a < subsets && closed; ++a)
            for (unsigned b = 0; b < subsets && closed; ++b)
                if (((fam >> a) & 1) && ((fam >> b) & 1) && !((fam >> (a | b)) & 1))
                    closed = false;
        if (!closed)
            continue;
        std::vector<std::uint64_t> opens;
        for (unsigned a = 0; a < subsets; ++a)
            if ((fam >> a) & 1)
                opens.push_back(a);
        out.push_back(opens);
    }
    return out;
}

inline std::vector<std::vector<unsigned>> permutations(unsigned n)
{
    std::vector<unsigned> p(n);
    for (unsigned i = 0; i < n; ++i)
        p[i] = i;
    std::vector<std::vector<unsigned>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::uint64_t permute_mask(std::uint64_t s, const std::vector<unsigned>& p)
{
    std::uint64_t out = 0;
    for (unsigned x = 0; x < p.size(); ++x)
        if ((s >> x) & 1)
            out |= std::uint64_t{1} << p[x];
    return out;
}

} // namespace oracle
