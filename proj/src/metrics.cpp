#include "prelab/metrics.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace prelab {

std::string format_rational(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text)
{
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        const long long p = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash))
            throw PreconditionError("bad rational");
        long long q = 1;
        if (slash != std::string::npos) {
            const std::string den = text.substr(slash + 1);
            q = std::stoll(den, &used);
            if (used != den.size() || q == 0)
                throw PreconditionError("bad rational");
        }
        return Rational(p, q);
    } catch (const std::logic_error&) {
        throw PreconditionError("malformed rational \"" + text + "\"");
    } catch (const PreconditionError&) {
        throw PreconditionError("malformed rational \"" + text + "\"");
    }
}

std::optional<std::string> pseudometric_violation(const std::vector<std::vector<Rational>>& d)
{
    const std::size_t n = d.size();
    for (const auto& row : d)
        if (row.size() != n)
            return "distance matrix is not square";
    for (std::size_t x = 0; x < n; ++x) {
        if (d[x][x] != Rational(0))
            return "d(" + std::to_string(x) + "," + std::to_string(x) + ") is not 0";
        for (std::size_t y = 0; y < n; ++y) {
            if (d[x][y] < Rational(0))
                return "negative distance at (" + std::to_string(x) + "," + std::to_string(y) + ")";
            if (d[x][y] != d[y][x])
                return "asymmetric at (" + std::to_string(x) + "," + std::to_string(y) + ")";
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (d[x][z] > d[x][y] + d[y][z])
                    return "triangle inequality fails for (" + std::to_string(x) + "," + std::to_string(y) + "," +
                           std::to_string(z) + ")";
    return std::nullopt;
}

Pseudometric::Pseudometric(Carrier carrier, std::vector<std::vector<Rational>> d)
    : carrier_(std::move(carrier)), d_(std::move(d))
{
    if (d_.size() != carrier_.size())
        throw PreconditionError("distance matrix size does not match the carrier");
    if (auto v = pseudometric_violation(d_))
        throw PreconditionError("not a pseudometric: " + *v);
}

Pseudometric Pseudometric::zero(const Carrier& carrier)
{
    const unsigned n = carrier.size();
    return Pseudometric(carrier, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
}

Pseudometric Pseudometric::discrete(const Carrier& carrier)
{
    const unsigned n = carrier.size();
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
    for (unsigned x = 0; x < n; ++x)
        d[x][x] = 0;
    return Pseudometric(carrier, std::move(d));
}

std::vector<Rational> Pseudometric::values() const
{
    std::set<Rational> s{Rational(0)};
    for (const auto& row : d_)
        s.insert(row.begin(), row.end());
    return {s.begin(), s.end()};
}

Relation Pseudometric::ball(const Rational& eps) const
{
    Relation r(size());
    for (Point x = 0; x < size(); ++x)
        for (Point y = 0; y < size(); ++y)
            if (d_[x][y] < eps)
                r.insert(x, y);
    return r;
}

Relation Pseudometric::closed_ball(const Rational& eps) const
{
    Relation r(size());
    for (Point x = 0; x < size(); ++x)
        for (Point y = 0; y < size(); ++y)
            if (d_[x][y] <= eps)
                r.insert(x, y);
    return r;
}

Pseudometric Pseudometric::pullback(const PointMap& f) const
{
    if (f.target != size())
        throw PreconditionError("map does not land in this carrier");
    std::vector<std::vector<Rational>> d(f.source, std::vector<Rational>(f.source));
    for (Point x = 0; x < f.source; ++x)
        for (Point y = 0; y < f.source; ++y)
            d[x][y] = d_[f(x)][f(y)];
    return Pseudometric(Carrier::lettered(f.source), std::move(d));
}

// ---------------------------------------------------------------------------

bool is_preuniform_pseudometric(const Pseudometric& rho, const PreUniformity& mu)
{
    if (rho.size() != mu.size())
        throw PreconditionError("pseudometric and pre-uniformity live on different carriers");
    const auto vals = rho.values();
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        const Rational eps = (vals[i] + vals[i + 1]) / Rational(2);
        const Relation b = rho.ball(eps);
        if (!mu.contains(b))
            return false;
    }
    return true;
}

bool pseudometric_precontinuity(const Pseudometric& rho, const PreUniformity& mu)
{
    if (!is_preuniform_pseudometric(rho, mu))
        throw PreconditionError("pseudometric is not pre-uniform with respect to the pre-uniformity");
    const unsigned n = rho.size();
    if (n * n > kMaxPoints)
        throw CeilingError("product carrier exceeds " + std::to_string(kMaxPoints) + " points");
    const PreTopology tau = induced_pretopology(mu);
    const auto vals = rho.values();
    // Preimages of open intervals are exactly the preimages of runs of
    // consecutive values.
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i; j < vals.size(); ++j) {
            PointSet s = PointSet::empty(n * n);
            for (Point x = 0; x < n; ++x)
                for (Point y = 0; y < n; ++y)
                    if (vals[i] <= rho(x, y) && rho(x, y) <= vals[j])
                        s.insert(x * n + y);
            if (!is_open_in_product(tau, tau, s))
                return false;
        }
    return true;
}

PreUniformity generate_from_pseudometrics(const std::vector<Pseudometric>& family)
{
    if (family.empty())
        throw PreconditionError("empty pseudometric family");
    const Carrier& carrier = family.front().carrier();
    const unsigned n = carrier.size();
    for (const Pseudometric& rho : family)
        if (rho.size() != n)
            throw PreconditionError("pseudometrics live on different carriers");
    for (Point x = 0; x < n; ++x)
        for (Point y = x + 1; y < n; ++y)
            if (std::all_of(family.begin(), family.end(), [&](const Pseudometric& r) { return r(x, y) == Rational(0); }))
                throw AxiomError("separation", "points " + carrier.label(x) + " and " + carrier.label(y) +
                                                   " are at distance 0 in every pseudometric");
    std::vector<Relation> balls;
    for (const Pseudometric& rho : family) {
        Rational min_pos(0);
        for (const Rational& v : rho.values())
            if (v > Rational(0)) {
                min_pos = v;
                break;
            }
        // Past the first radius at or below the smallest positive value the
        // balls stop changing.
        Rational radius(1, 2);
        while (true) {
            balls.push_back(rho.ball(radius));
            if (min_pos == Rational(0) || radius <= min_pos)
                break;
            radius /= Rational(2);
        }
    }
    return PreUniformity(carrier, std::move(balls));
}

PreUniformity induced_from_pseudometric(const Pseudometric& rho)
{
    return generate_from_pseudometrics({rho});
}

// --- chains ------------------------------------------------------------------

namespace {

bool transitive_enough(const Relation& v)
{
    return v.compose(v).compose(v).subset_of(v);
}

} // namespace

Relation EntourageChain::at(std::size_t i) const
{
    if (i < v.size())
        return v[i];
    if (v.empty())
        throw PreconditionError("empty chain");
    return transitive_enough(v.back()) ? v.back() : Relation::diagonal(carrier.size());
}

std::optional<std::string> chain_violation(const EntourageChain& chain)
{
    const unsigned n = chain.carrier.size();
    if (chain.v.empty())
        return "chain is empty";
    for (std::size_t i = 0; i < chain.v.size(); ++i) {
        const Relation& r = chain.v[i];
        if (r.universe() != n)
            return "V_" + std::to_string(i) + " lives on a different carrier";
        if (!r.contains_diagonal())
            return "V_" + std::to_string(i) + " misses part of the diagonal";
        if (i >= 1 && !r.is_symmetric())
            return "V_" + std::to_string(i) + " is not symmetric";
        if (i >= 1 && !r.compose(r).compose(r).subset_of(chain.v[i - 1]))
            return "V_" + std::to_string(i) + " cubed is not inside V_" + std::to_string(i - 1);
    }
    if (chain.v.front() != Relation::full(n))
        return "V_0 is not X x X";
    return std::nullopt;
}

bool sandwich_holds(const Pseudometric& rho, const EntourageChain& chain)
{
    Rational radius(1);
    for (std::size_t i = 1; i <= chain.v.size(); ++i) {
        radius /= Rational(2);
        const Relation vi = chain.at(i);
        if (!rho.ball(radius).subset_of(vi) || !vi.subset_of(rho.closed_ball(radius)))
            return false;
    }
    return true;
}

ChainPseudometric chain_pseudometric(const EntourageChain& chain)
{
    if (auto v = chain_violation(chain))
        throw AxiomError("chain", *v);
    const unsigned n = chain.carrier.size();
    const std::size_t k = chain.v.size() - 1;
    const bool constant_tail = transitive_enough(chain.v.back());

    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (Point x = 0; x < n; ++x)
        for (Point y = 0; y < n; ++y) {
            if (x == y)
                continue;
            std::size_t top = 0;
            for (std::size_t i = 0; i <= k; ++i)
                if (chain.v[i].contains(x, y))
                    top = i;
            if (top == k && constant_tail)
                continue; // in every member of the continued chain
            d[x][y] = Rational(1, 1LL << top);
        }
    // Shortest paths realize the infimum over point chains.
    for (Point z = 0; z < n; ++z)
        for (Point x = 0; x < n; ++x)
            for (Point y = 0; y < n; ++y)
                if (d[x][z] + d[z][y] < d[x][y])
                    d[x][y] = d[x][z] + d[z][y];
    Pseudometric rho(chain.carrier, std::move(d));
    const bool ok = sandwich_holds(rho, chain);
    return ChainPseudometric{std::move(rho), ok};
}

UnitBall unit_ball_pseudometric(const PreUniformity& mu, const Relation& v)
{
    mu.require_valid("unit ball");
    if (!mu.report().strong)
        throw AxiomError("unit ball", "pre-uniformity is not strong");
    if (!mu.contains(v))
        throw PreconditionError("relation is not a member of the pre-uniformity");
    const unsigned n = mu.size();
    const auto& basis = mu.basis();

    auto first = [&](auto pred) -> const Relation& {
        for (const Relation& b : basis)
            if (pred(b))
                return b;
        throw AxiomError("unit ball", "no basis member satisfies the strong axiom");
    };
    std::vector<Relation> ws{first([&](const Relation& b) { return b.compose(b).subset_of(v); })};
    while (true) {
        const Relation& prev = ws.back();
        const Relation& next = first([&](const Relation& b) { return b.compose(b).compose(b).subset_of(prev); });
        if (std::find(ws.begin(), ws.end(), next) != ws.end())
            break;
        ws.push_back(next);
    }
    EntourageChain chain{mu.carrier(), {Relation::full(n)}};
    for (const Relation& w : ws)
        chain.v.push_back(w & w.inverse());

    ChainPseudometric base = chain_pseudometric(chain);
    std::vector<std::vector<Rational>> d = base.rho.matrix();
    for (auto& row : d)
        for (auto& x : row)
            x *= Rational(2);
    Pseudometric rho(mu.carrier(), std::move(d));
    const bool certified = base.sandwich && rho.ball(Rational(1)).subset_of(v);
    const bool preuniform = is_preuniform_pseudometric(rho, mu);
    return UnitBall{std::move(rho), std::move(chain), certified, preuniform};
}

SeparatingFunction separating_function(const PreUniformity& mu, Point x, PointSet f)
{
    mu.require_valid("separating function");
    if (!mu.report().strong)
        throw AxiomError("separating function", "pre-uniformity is not strong");
    const unsigned n = mu.size();
    if (x >= n || f.universe() != n)
        throw PreconditionError("point or set does not live on the carrier");
    if (f.contains(x))
        throw PreconditionError("point lies in the closed set");
    const PreTopology tau = induced_pretopology(mu);
    if (!tau.is_closed(f))
        throw PreconditionError("set is not closed in the induced pre-topology");

    const Relation* chosen = nullptr;
    for (const Relation& b : mu.basis())
        if (!b.section(x).meets(f)) {
            chosen = &b;
            break;
        }
    if (!chosen)
        throw AxiomError("separating function", "no basis section around the point misses the closed set");
    const UnitBall ub = unit_ball_pseudometric(mu, *chosen);

    SeparatingFunction out;
    for (Point y = 0; y < n; ++y)
        out.values.push_back(std::min(Rational(1), ub.rho(x, y)));
    out.endpoints = out.values[x] == Rational(0);
    f.for_each([&](Point y) { out.endpoints = out.endpoints && out.values[y] == Rational(1); });
    out.fibers_open = true;
    for (const Rational& value : std::set<Rational>(out.values.begin(), out.values.end())) {
        PointSet fiber = PointSet::empty(n);
        for (Point y = 0; y < n; ++y)
            if (out.values[y] == value)
                fiber.insert(y);
        out.fibers_open = out.fibers_open && tau.is_open(fiber);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Pseudometric> continuous_pseudometrics(const PreTopology& tau)
{
    const unsigned n = tau.size();
    if (n > 10)
        throw CeilingError("partition enumeration is limited to 10 points");
    std::vector<Pseudometric> out;
    std::vector<unsigned> block(n, 0);
    // Restricted growth strings enumerate set partitions.
    std::function<void(Point, unsigned)> rec = [&](Point x, unsigned used) {
        if (x == n) {
            for (unsigned b = 0; b < used; ++b) {
                PointSet s = PointSet::empty(n);
                for (Point y = 0; y < n; ++y)
                    if (block[y] == b)
                        s.insert(y);
                if (!tau.is_open(s))
                    return;
            }
            std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
            for (Point y = 0; y < n; ++y)
                for (Point z = 0; z < n; ++z)
                    d[y][z] = Rational(block[y] > block[z] ? block[y] - block[z] : block[z] - block[y]);
            out.emplace_back(tau.carrier(), std::move(d));
            return;
        }
        for (unsigned b = 0; b <= used && b < n; ++b) {
            block[x] = b;
            rec(x + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

} // namespace prelab
