#pragma once

#include <json.hpp>

#include "sw/certify.hpp"
#include "sw/tangency.hpp"

namespace sw {

/// Wire format of a tangency report; field names are part of the external
/// contract: shape, k, r, prime, seed, terracini_rank, span_dim,
/// jacobian_rank, verdict, trials, elapsed_ms.
nlohmann::json to_json(const TangencyReport& report);
TangencyReport tangency_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NumericWitness& w);
NumericWitness numeric_witness_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

/// Certificates serialize with their full derivation, one node per rule
/// application, replayable in order.
nlohmann::json to_json(const Certificate& c);

nlohmann::json to_json(const SecantDimension& s);

nlohmann::json to_json(const BoundsReport& b);

}  // namespace sw
