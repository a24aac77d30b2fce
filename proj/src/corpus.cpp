#include "agenda_metrics/corpus.hpp"

#include <algorithm>
#include <exception>

#include <omp.h>

#include "agenda_metrics/error.hpp"

namespace agenda_metrics {

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::word_count: return "word_count";
    case Metric::g: return "g";
    case Metric::rho: return "rho";
    case Metric::rho_norm: return "rho_norm";
    case Metric::pi_star: return "pi_star";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double metric_value(const ScoreRecord& record, Metric metric) noexcept {
  switch (metric) {
    case Metric::word_count: return static_cast<double>(record.word_count);
    case Metric::g: return record.g;
    case Metric::rho: return record.rho;
    case Metric::rho_norm: return record.rho_norm;
    case Metric::pi_star: return record.pi_star;
  }
  return 0.0;
}

double SessionAggregate::mean(Metric metric) const noexcept {
  switch (metric) {
    case Metric::word_count: return mean_word_count;
    case Metric::g: return mean_g;
    case Metric::rho: return mean_rho;
    case Metric::rho_norm: return mean_rho_norm;
    case Metric::pi_star: return mean_pi;
  }
  return 0.0;
}

SessionAggregate aggregate_session(const SessionReport& report, std::optional<int> age) {
  if (report.records.empty()) {
    throw ValidationError("session " + report.session_id + " has no scored turns");
  }
  SessionAggregate out;
  out.session_id = report.session_id;
  out.child_age_years = age;
  out.turn_count = report.records.size();
  for (const auto& r : report.records) {
    out.mean_word_count += static_cast<double>(r.word_count);
    out.mean_g += r.g;
    out.mean_rho += r.rho;
    out.mean_rho_norm += r.rho_norm;
    out.mean_pi += r.pi_star;
  }
  const auto n = static_cast<double>(out.turn_count);
  out.mean_word_count /= n;
  out.mean_g /= n;
  out.mean_rho /= n;
  out.mean_rho_norm /= n;
  out.mean_pi /= n;
  return out;
}

std::map<int, AgeGroupStats> metric_by_age(std::span<const SessionAggregate> aggregates,
                                           Metric metric) {
  std::map<int, std::vector<double>> groups;
  for (const auto& a : aggregates) {
    if (a.child_age_years) groups[*a.child_age_years].push_back(a.mean(metric));
  }
  std::map<int, AgeGroupStats> out;
  for (const auto& [age, values] : groups) {
    AgeGroupStats s;
    s.count = values.size();
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(s.count);
    for (double v : values) s.variance += (v - s.mean) * (v - s.mean);
    s.variance /= static_cast<double>(s.count);
    out.emplace(age, s);
  }
  return out;
}

std::map<int, AgeGroupStats> expressiveness_by_age(std::span<const SessionAggregate> aggregates) {
  return metric_by_age(aggregates, Metric::word_count);
}

std::vector<CorrelationRow> correlate_with_age(std::span<const SessionReport> reports,
                                               CorrelationUnit unit) {
  std::vector<CorrelationRow> rows;
  for (Metric metric : kAllMetrics) {
    std::vector<double> values;
    std::vector<double> ages;
    for (const auto& report : reports) {
      if (!report.child_age_years || report.records.empty()) continue;
      const auto age = static_cast<double>(*report.child_age_years);
      if (unit == CorrelationUnit::session) {
        values.push_back(aggregate_session(report, report.child_age_years).mean(metric));
        ages.push_back(age);
      } else {
        for (const auto& r : report.records) {
          values.push_back(metric_value(r, metric));
          ages.push_back(age);
        }
      }
    }
    CorrelationRow row;
    row.result.metric = std::string(to_string(metric));
    row.result.n = values.size();
    try {
      row.result = pearson(values, ages, row.result.metric);
    } catch (const UndefinedCorrelation& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SessionReport> score_corpus(std::span<const Interview> sessions,
                                        const Hyperparams& params, const TextConfig& text,
                                        int threads) {
  params.validate();
  const auto n = static_cast<std::ptrdiff_t>(sessions.size());
  std::vector<SessionReport> out(sessions.size());
  std::vector<std::exception_ptr> errors(sessions.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = score_session(sessions[i], params, text);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw ValidationError("session " + sessions[i].session_id + ": " + e.what());
    }
  }
  return out;
}

std::vector<SessionReport> score_corpus_serial(std::span<const Interview> sessions,
                                               const Hyperparams& params,
                                               const TextConfig& text) {
  params.validate();
  std::vector<SessionReport> out;
  out.reserve(sessions.size());
  for (const auto& s : sessions) {
    try {
      out.push_back(score_session(s, params, text));
    } catch (const std::exception& e) {
      throw ValidationError("session " + s.session_id + ": " + e.what());
    }
  }
  return out;
}

std::vector<Interview> load_corpus_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ValidationError(dir.string() + ": not a directory");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw ValidationError(dir.string() + ": no *.jsonl transcripts");
  std::sort(files.begin(), files.end());

  std::vector<Interview> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    try {
      out.push_back(load_interview(f));
    } catch (const std::exception& e) {
      throw ValidationError(f.string() + ": " + e.what());
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Interview& a, const Interview& b) { return a.session_id < b.session_id; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].session_id == out[i - 1].session_id) {
      throw ValidationError("duplicate session_id \"" + out[i].session_id + "\"");
    }
  }
  return out;
}

}  // namespace agenda_metrics
