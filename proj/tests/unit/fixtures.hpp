#pragma once

#include "prelab/search.hpp"

#include <map>
#include <vector>

namespace fixtures {

/// Canonical representatives of the valid pre-uniformities on n points.
inline const std::vector<prelab::PreUniformity>& valid_preuniformities(unsigned n)
{
    static std::map<unsigned, std::vector<prelab::PreUniformity>> cache;
    auto [it, fresh] = cache.try_emplace(n);
    if (fresh)
        prelab::enumerate(prelab::StructureKind::PreUniformity, n, {},
                          [&](prelab::AtomContext& c, const prelab::OrderKey&) {
                              if (c.atom("preuniformity"))
                                  it->second.push_back(std::get<prelab::PreUniformity>(c.subject()));
                              return true;
                          });
    return it->second;
}

template <class T>
std::vector<T> representatives(prelab::StructureKind k, unsigned n)
{
    std::vector<T> out;
    prelab::enumerate(k, n, {}, [&](prelab::AtomContext& c, const prelab::OrderKey&) {
        out.push_back(std::get<T>(c.subject()));
        return true;
    });
    return out;
}

/// △ ∪ {(0,1)} and △ ∪ {(1,0)} on two points.
inline prelab::PreUniformity strong_two_point()
{
    using prelab::Relation;
    return prelab::PreUniformity(prelab::Carrier::lettered(2), {Relation::from_pairs(2, {{0, 0}, {1, 1}, {0, 1}}),
                                                               Relation::from_pairs(2, {{0, 0}, {1, 1}, {1, 0}})});
}

} // namespace fixtures
