#pragma once

#include <string>

#include <json.hpp>

#include "hcr/abstract_nets.hpp"
#include "hcr/detailed_nets.hpp"
#include "hcr/engine.hpp"
#include "hcr/hierarchy.hpp"
#include "hcr/refinement.hpp"
#include "hcr/sampler.hpp"

// JSON schemas for every file the CLI reads or writes. Objects use
// nlohmann::json's sorted keys, so dumps are deterministic and diffable.
namespace hcr::json_io {

using nlohmann::json;

/// Pretty dump with a trailing newline; the on-disk form of every artifact.
std::string dump(const json& j);

json to_json(const ConceptSet& B);
ConceptSet concept_set_from_json(const json& j);

/// {"l_max", "k", "n", "levels": [["0:0", ...], ...], "children": {"l:i": ["l-1:j", ...]}}
json to_json(const ConceptHierarchy& h);
ConceptHierarchy hierarchy_from_json(const json& j);

/// {"l_prime_max", "widths", "tau", "edges": [["u", "v"], ...], "failed": [...]}
json to_json(const Network& net);
Network network_from_json(const json& j);

/// {"times": [[firing neurons at t = 0], [t = 1], ...]}
json to_json(const ExecutionTrace& trace);

/// {"failed": ["l:j", ...]}
json to_json(const FailurePattern& F);
FailurePattern failures_from_json(const json& j);

/// {"edges": [["u", "v"], ...]}
json to_json(const EdgeSet& E);
EdgeSet edges_from_json(const json& j);

json to_json(const DetailedParams& p);
json to_json(const FConstraintReport& r);
json to_json(const EConstraintReport& r);

/// {"network", "B", "violations": [{"concept", "kind"}], "pass"}
json to_json(const RecognitionReport& r);
/// Adds per-concept firing counts and the m(1-e) bound as an exact fraction.
json to_json(const MultiRecognitionReport& r);

json to_json(const RefinementVerdict& v, const std::string& fingerprint);
json to_json(const PipelineReport& r, const std::string& fingerprint);
json to_json(const ExperimentStats& s);

/// Stable 64-bit FNV-1a digest (hex) of the canonical JSON of an instance.
std::string instance_fingerprint(const ConceptHierarchy& h, const DetailedParams& params, const FailurePattern& F,
                                 const EdgeSet* E);

}  // namespace hcr::json_io
