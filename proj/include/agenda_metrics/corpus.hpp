#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "agenda_metrics/scoring.hpp"
#include "agenda_metrics/stats.hpp"
#include "agenda_metrics/transcript.hpp"

namespace agenda_metrics {

enum class Metric { word_count, g, rho, rho_norm, pi_star };

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;
inline constexpr Metric kAllMetrics[] = {Metric::word_count, Metric::g, Metric::rho,
                                         Metric::rho_norm, Metric::pi_star};

double metric_value(const ScoreRecord& record, Metric metric) noexcept;

struct SessionAggregate {
  std::string session_id;
  std::optional<int> child_age_years;
  double mean_word_count = 0.0;
  double mean_g = 0.0;
  double mean_rho = 0.0;
  double mean_rho_norm = 0.0;
  double mean_pi = 0.0;
  std::size_t turn_count = 0;

  double mean(Metric metric) const noexcept;
};

/// Arithmetic means over the report's records. Throws ValidationError on an
/// empty report.
SessionAggregate aggregate_session(const SessionReport& report, std::optional<int> age);

struct AgeGroupStats {
  double mean = 0.0;
  double variance = 0.0;  // population variance
  std::size_t count = 0;

  friend bool operator==(const AgeGroupStats&, const AgeGroupStats&) = default;
};

/// Per-age mean/variance of the sessions' mean word count. Sessions without
/// an age are skipped.
std::map<int, AgeGroupStats> expressiveness_by_age(std::span<const SessionAggregate> aggregates);

/// Same grouping for any metric's session mean.
std::map<int, AgeGroupStats> metric_by_age(std::span<const SessionAggregate> aggregates,
                                           Metric metric);

enum class CorrelationUnit { session, turn };

/// One row of the correlation table; `error` is set when r is undefined.
struct CorrelationRow {
  CorrelationResult result;
  std::optional<std::string> error;
};

/// Pearson r of each metric against child age. Session unit: one point per
/// aged session (its mean). Turn unit: one point per response turn.
std::vector<CorrelationRow> correlate_with_age(std::span<const SessionReport> reports,
                                               CorrelationUnit unit);

/// Scores sessions independently with OpenMP; `threads` <= 0 uses the
/// runtime default. Output order follows input order whatever the schedule.
std::vector<SessionReport> score_corpus(std::span<const Interview> sessions,
                                        const Hyperparams& params, const TextConfig& text,
                                        int threads = 0);

/// Single-threaded reference for score_corpus.
std::vector<SessionReport> score_corpus_serial(std::span<const Interview> sessions,
                                               const Hyperparams& params,
                                               const TextConfig& text);

/// Every *.jsonl under `dir` (non-recursive) with its optional sidecar
/// metadata, sorted by session_id. Throws ValidationError for a missing or
/// empty directory.
std::vector<Interview> load_corpus_dir(const std::filesystem::path& dir);

}  // namespace agenda_metrics
