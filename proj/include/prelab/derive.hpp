#pragma once

// Named constructions over interchange documents, and replayable records
// of their runs.

#include "prelab/search.hpp"

#include <string>
#include <vector>

namespace prelab {

/// tau, delta, mu_delta, mu_w, coreflection, chain-pseudometric, product,
/// sup, universal, separation-profile, finest-compatible.
const std::vector<std::string>& construction_names();

struct Derivation
{
    json output;
    /// Side verdicts of the construction (equalities it checked, bounds).
    json notes = json::object();
};

/// Throws FormatError for unknown constructions or unsuitable inputs and
/// AxiomError when a precondition of the construction fails.
Derivation derive(const std::string& construction, const std::vector<json>& inputs, std::size_t bound = 0);

/// {"kind":"derivation", construction, bound, inputs, output, notes}.
json derivation_record(const std::string& construction, const std::vector<json>& inputs, std::size_t bound,
                       const Derivation& d);

/// Re-runs the construction on the recorded inputs and compares.
Replay replay_derivation(const json& record);

} // namespace prelab
