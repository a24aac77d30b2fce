#pragma once

#include <json.hpp>

#include "agenda_metrics/scoring.hpp"
#include "agenda_metrics/service.hpp"

namespace agenda_metrics::service::detail {

nlohmann::json record_to_json(const ScoreRecord& record, bool with_ranks);
nlohmann::json live_record_to_json(const LiveRecord& record);
nlohmann::json weighted_to_json(const std::vector<WeightedNGram>& entries);

/// Full report including its score CSV under "csv".
nlohmann::json report_to_json(const SessionReport& report);

}  // namespace agenda_metrics::service::detail
