#pragma once

#include "ergopt/bousch.hpp"
#include "ergopt/ergsup.hpp"
#include "ergopt/locking.hpp"
#include "ergopt/measures.hpp"

#include <json.hpp>

#include <string>

namespace ergopt {

using Json = nlohmann::json;

// Wire formats, schema "v1". Measures serialize as atom lists with "num/den"
// strings; all reports carry their inputs for reproducibility.

Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

Json certificate_to_json(const MembershipCertificate& cert);
Json candidate_set_to_json(const CandidateSet& cs);
Json bousch_result_to_json(const BouschResult& r);
Json drift_to_json(const DriftResult& r);
Json orbit_result_to_json(const OrbitSearchResult& r);
Json sweep_entry_to_json(const SweepEntry& e);
Json global_sup_to_json(const GlobalSupEstimate& g);
Json classification_to_json(const Classification& c);
Json example76_to_json(const Example76Report& r);
Json lock_report_to_json(const LockReport& r);
Json transport_trace_to_json(const TransportTrace& t);

/// CSV table of a restricted-supremum sweep: m, Q_m_lower, Q_m_upper.
void write_m_sweep_csv(const std::string& path, const std::vector<OrbitSearchResult>& sweep,
                       const std::vector<double>& uppers);

void write_json(const std::string& path, const Json& j);

} // namespace ergopt
