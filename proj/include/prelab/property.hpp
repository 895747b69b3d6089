#pragma once

// Named verdicts ("atoms") over the four structure kinds, and boolean
// expressions over them: atoms, !, &, |, parentheses (also the symbols
// not, and, or as written in logic).

#include "prelab/interchange.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace prelab {

enum class StructureKind { Pretopology, PreUniformity, PreProximity, PreTopGroup };

const char* kind_name(StructureKind k);
/// Accepts "pretopology", "preuniformity-basis" (or "preuniformity"),
/// "preproximity", "pretopgroup".
StructureKind parse_kind(const std::string& name);

using Subject = std::variant<PreTopology, PreUniformity, PreProximity, GroupSubject>;

StructureKind kind_of(const Subject& s);
json subject_to_json(const Subject& s);
Subject subject_from_json(const json& doc);

/// Basis-level axiom flags, as computed by the fast enumeration path.
struct AxiomFlags
{
    bool u1 = true, u2 = false, u3 = false, u5 = false, u6 = false, u2sym = false, u3strong = false;
    bool preuniformity() const { return u1 && u2 && u3 && u5; }
};

/// Lazily evaluates atoms for one structure, caching derived objects.
class AtomContext
{
public:
    explicit AtomContext(Subject subject);
    /// Pre-uniformity built on demand; `flags` answers the axiom atoms
    /// without building it.
    AtomContext(std::function<PreUniformity()> build, AxiomFlags flags);
    ~AtomContext();
    AtomContext(AtomContext&&) noexcept;

    StructureKind kind() const noexcept { return kind_; }
    /// Throws PreconditionError for names not registered for this kind.
    bool atom(const std::string& name);
    const Subject& subject();

private:
    struct Cache;
    StructureKind kind_;
    std::unique_ptr<Cache> cache_;
};

const std::vector<std::string>& atom_names(StructureKind k);
bool has_atom(StructureKind k, const std::string& name);

class Property
{
public:
    /// Throws PreconditionError on syntax errors.
    static Property parse(const std::string& text);

    const std::string& text() const noexcept { return text_; }
    /// Distinct atom names in order of first appearance.
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    /// Throws PreconditionError("unresolvable property name ...") when an
    /// atom is not registered for `k`.
    void check_names(StructureKind k) const;

    /// Short-circuit evaluation.
    bool evaluate(const std::function<bool(const std::string&)>& atom) const;

    struct Node;

private:
    std::string text_;
    std::vector<std::string> atoms_;
    std::shared_ptr<const Node> root_;
};

struct TraceEntry
{
    std::string atom;
    bool value = false;
};

/// Every atom of `p` evaluated (no short-circuit), plus the overall value.
std::pair<std::vector<TraceEntry>, bool> full_trace(const Property& p, AtomContext& ctx);

} // namespace prelab
