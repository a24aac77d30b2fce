#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "agenda_metrics/transcript.hpp"

namespace agenda_metrics {

struct SyntheticConfig {
  std::uint64_t seed = 42;
  int n_sessions = 500;
  int turns_per_session = 100;
  int min_age = 3;
  int max_age = 17;
};

/// {"seed": int, "n_sessions": int, "turns_per_session": int, "age_range": [min, max]}
SyntheticConfig parse_synthetic_config(std::string_view json);

/// Deterministic interview corpus for analytics tests.
///
/// Response length grows linearly with the child's age while the number of
/// agenda words echoed per response is drawn from an age-independent
/// distribution, so verbosity correlates with age and topical overlap does
/// not.
std::vector<Interview> generate_corpus(const SyntheticConfig& config);

/// Writes each session as <id>.jsonl plus <id>.meta.json.
void write_corpus(const std::filesystem::path& dir, const std::vector<Interview>& sessions);

}  // namespace agenda_metrics
