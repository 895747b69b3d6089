#pragma once

// JSON interchange documents. Every document carries a "kind" tag and a
// "carrier" label list; payloads name points by label.

#include "prelab/groups.hpp"
#include "prelab/metrics.hpp"
#include "prelab/preprox.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace prelab {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed document: missing fields, unknown labels, wrong shapes.
class FormatError : public Error
{
public:
    using Error::Error;
};

/// A group with a pre-topology and a family of opens at the identity.
struct GroupSubject
{
    GroupTable group;
    PreTopology tau;
    std::vector<PointSet> base;
};

json read_json_file(const std::string& path);
/// Canonical text: two-space indent, trailing newline.
std::string dump(const json& doc);
void write_file(const std::string& path, const std::string& text);

std::string document_kind(const json& doc);

Carrier carrier_from_json(const json& j);
json carrier_to_json(const Carrier& c);
PointSet set_from_json(const Carrier& c, const json& j);
json set_to_json(const Carrier& c, PointSet s);
Relation relation_from_json(const Carrier& c, const json& j);
json relation_to_json(const Carrier& c, const Relation& r);

/// Raw basis of a pre-uniformity document (not yet closed or validated).
std::vector<Relation> basis_from_json(const Carrier& c, const json& doc);
PreUniformity preuniformity_from_json(const json& doc);
json to_json(const PreUniformity& mu);

PreTopology pretopology_from_json(const json& doc);
json to_json(const PreTopology& tau);

/// `added` reports whether up-closing the listed near pairs added pairs.
PreProximity preproximity_from_json(const json& doc, bool* added = nullptr);
json to_json(const PreProximity& delta);

Pseudometric pseudometric_from_json(const json& doc);
json to_json(const Pseudometric& rho);

EntourageChain chain_from_json(const json& doc);
json to_json(const EntourageChain& chain);

GroupSubject group_from_json(const json& doc);
json to_json(const GroupSubject& g);

json axiom_report_to_json(const Carrier& c, const AxiomReport& rep);
json pp_report_to_json(const PpReport& rep);

} // namespace prelab
