#pragma once

// Pseudometrics with exact rational values, chain pseudometrics and the
// pseudometric side of pre-uniformities.

#include "prelab/preunif.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace prelab {

using Rational = boost::rational<long long>;

std::string format_rational(const Rational& r);
/// Parses "p/q" or "p"; throws PreconditionError on malformed input.
Rational parse_rational(const std::string& text);

class Pseudometric
{
public:
    /// Validates zero diagonal, symmetry, non-negativity and the triangle
    /// inequality; throws PreconditionError naming the first violation.
    Pseudometric(Carrier carrier, std::vector<std::vector<Rational>> d);

    static Pseudometric zero(const Carrier& carrier);
    /// 0 on the diagonal, 1 elsewhere.
    static Pseudometric discrete(const Carrier& carrier);

    const Carrier& carrier() const noexcept { return carrier_; }
    unsigned size() const noexcept { return carrier_.size(); }
    const Rational& operator()(Point x, Point y) const { return d_.at(x).at(y); }
    const std::vector<std::vector<Rational>>& matrix() const noexcept { return d_; }

    /// Distinct values, ascending (always starting with 0).
    std::vector<Rational> values() const;
    /// {(x,y) : d(x,y) < eps}.
    Relation ball(const Rational& eps) const;
    /// {(x,y) : d(x,y) <= eps}.
    Relation closed_ball(const Rational& eps) const;
    /// (x,y) -> d(f(x), f(y)) on the source of f.
    Pseudometric pullback(const PointMap& f) const;

    bool operator==(const Pseudometric& o) const { return d_ == o.d_; }

private:
    Carrier carrier_;
    std::vector<std::vector<Rational>> d_;
};

/// First pseudometric axiom violated by `d`, if any.
std::optional<std::string> pseudometric_violation(const std::vector<std::vector<Rational>>& d);

/// For every eps among the midpoints of consecutive values of rho, some
/// basis V of mu has rho < eps on V.
bool is_preuniform_pseudometric(const Pseudometric& rho, const PreUniformity& mu);

/// Every preimage of an open interval of values is open in tau(mu) x tau(mu).
/// Throws PreconditionError unless rho is pre-uniform with respect to mu.
bool pseudometric_precontinuity(const Pseudometric& rho, const PreUniformity& mu);

/// Up-closure of the balls of a single pseudometric.
PreUniformity induced_from_pseudometric(const Pseudometric& rho);

// --- chains ------------------------------------------------------------------

/// V_0 = X x X, V_{i+1}^3 inside V_i, V_i symmetric for i >= 1. A finite
/// chain V_0..V_k is continued by repeating V_k when V_k is transitive and
/// by the diagonal otherwise.
struct EntourageChain
{
    Carrier carrier;
    std::vector<Relation> v;

    /// Member i of the continued chain.
    Relation at(std::size_t i) const;
};

/// Description of the first broken chain condition, naming its index.
std::optional<std::string> chain_violation(const EntourageChain& chain);

struct ChainPseudometric
{
    Pseudometric rho;
    /// {rho < 2^-i} inside V_i inside {rho <= 2^-i} for every i >= 1.
    bool sandwich = false;
};

/// f(x,y) = 2^-max{i : (x,y) in V_i} (0 when in every V_i), then the
/// shortest-path metric of f. Throws AxiomError on an invalid chain.
ChainPseudometric chain_pseudometric(const EntourageChain& chain);

/// Checks the sandwich for indices 1..k+1, which covers the continued tail.
bool sandwich_holds(const Pseudometric& rho, const EntourageChain& chain);

struct UnitBall
{
    Pseudometric rho;
    EntourageChain chain;
    /// {rho < 1} inside V.
    bool certified = false;
    /// Whether rho is pre-uniform with respect to mu.
    bool preuniform_wrt_mu = false;
};

/// V_1 = W n W^-1 for the first basis W with W o W inside V, then
/// V_{i+1} = B n B^-1 for the first basis B with B^3 inside the previous B,
/// until a member repeats; rho is twice the chain pseudometric.
UnitBall unit_ball_pseudometric(const PreUniformity& mu, const Relation& v);

struct SeparatingFunction
{
    std::vector<Rational> values;
    /// Every fiber of the function is open in tau(mu).
    bool fibers_open = false;
    /// values[x] == 0 and values == 1 on F.
    bool endpoints = false;
};

/// f(y) = min{1, rho(x,y)} for the unit-ball pseudometric of the first
/// basis V with V[x] missing F.
SeparatingFunction separating_function(const PreUniformity& mu, Point x, PointSet f);

// --- pseudometrics from continuous functions -----------------------------------

/// Partitions of the carrier into open blocks (fibers of pre-continuous
/// real functions), each turned into |f(x) - f(y)| with f = block index.
std::vector<Pseudometric> continuous_pseudometrics(const PreTopology& tau);

} // namespace prelab
