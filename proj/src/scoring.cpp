#include "agenda_metrics/scoring.hpp"

#include <algorithm>
#include <numeric>

#include "agenda_metrics/error.hpp"

namespace agenda_metrics {

ScoreRecord score_response(std::size_t t, const Vocabulary& vocab, const TermVector& agenda,
                           double agenda_norm, const TermVector& rolling,
                           std::string_view response, double beta) {
  const TermVector r = phi(vocab, response);
  const double rolling_norm = rolling.norm();

  ScoreRecord rec;
  rec.t = t;
  rec.word_count = word_count(response);
  rec.g = agenda_score_g(r, agenda);
  rec.rho = responsiveness_rho(r, rolling);
  rec.rho_norm = rolling_norm > 0.0 ? rec.rho / rolling_norm : 0.0;
  rec.pi_star = combined_pi_star(rec.rho, rec.g, rolling_norm, agenda_norm, beta);
  return rec;
}

SessionReport score_session(const Interview& interview, const Hyperparams& params,
                            const TextConfig& text, const PreparedAgenda* prepared,
                            std::size_t top_k) {
  params.validate();
  if (interview.pairs.empty()) throw ValidationError("no questions; agenda undefined");

  const auto questions = interview.questions();
  std::optional<Vocabulary> own_vocab;
  TermVector own_agenda;
  if (!prepared) {
    own_vocab.emplace(build_vocabulary(questions, text.n_max, text.stopwords));
    own_agenda = build_agenda(*own_vocab, questions);
  }
  const Vocabulary& vocab = prepared ? prepared->vocab : *own_vocab;
  const TermVector& agenda = prepared ? prepared->weights : own_agenda;
  const double agenda_norm = agenda.norm();

  SessionReport report;
  report.session_id = interview.session_id;
  report.child_age_years = interview.child_age_years;
  report.params = params;
  report.records.reserve(interview.pairs.size());

  TermVector rolling;
  for (std::size_t t = 0; t < interview.pairs.size(); ++t) {
    const auto& pair = interview.pairs[t];
    rolling = rolling_agenda_step(rolling, phi(vocab, pair.question), params.gamma);
    report.records.push_back(
        score_response(t, vocab, agenda, agenda_norm, rolling, pair.response, params.beta));
  }
  assign_ranks(report.records);
  report.agenda_top_k = top_k_agenda(agenda, vocab, top_k);
  report.normalized_series = normalize_records(report.records);
  return report;
}

std::vector<WeightedNGram> top_k_agenda(const TermVector& agenda, const Vocabulary& vocab,
                                        std::size_t k) {
  std::vector<TermVector::Entry> entries(agenda.entries().begin(), agenda.entries().end());
  // Entries arrive in index order, so a stable sort keeps index order within ties.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.weight > b.weight; });
  entries.resize(std::min(k, entries.size()));
  std::vector<WeightedNGram> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({vocab.key(e.index), e.weight});
  return out;
}

std::vector<int> rank_metric(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<int> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const bool tied = pos > 0 && values[order[pos]] == values[order[pos - 1]];
    ranks[order[pos]] = tied ? ranks[order[pos - 1]] : static_cast<int>(pos + 1);
  }
  return ranks;
}

std::vector<double> normalize_series(std::span<const double> values) {
  double max = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw ValidationError("normalize_series: values must be non-negative");
    max = std::max(max, v);
  }
  std::vector<double> out(values.size(), 0.0);
  if (max > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / max;
  }
  return out;
}

std::int64_t word_count(std::string_view response) {
  return static_cast<std::int64_t>(tokenize(response).size());
}

namespace {

template <typename Get>
std::vector<double> column(std::span<const ScoreRecord> records, Get get) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(static_cast<double>(get(r)));
  return out;
}

}  // namespace

void assign_ranks(std::vector<ScoreRecord>& records) {
  const auto wc = rank_metric(column(records, [](const auto& r) { return r.word_count; }));
  const auto g = rank_metric(column(records, [](const auto& r) { return r.g; }));
  const auto rho = rank_metric(column(records, [](const auto& r) { return r.rho; }));
  const auto pi = rank_metric(column(records, [](const auto& r) { return r.pi_star; }));
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].rank_wc = wc[i];
    records[i].rank_g = g[i];
    records[i].rank_rho = rho[i];
    records[i].rank_pi = pi[i];
  }
}

NormalizedSeries normalize_records(std::span<const ScoreRecord> records) {
  NormalizedSeries s;
  s.word_count = normalize_series(column(records, [](const auto& r) { return r.word_count; }));
  s.g = normalize_series(column(records, [](const auto& r) { return r.g; }));
  s.rho = normalize_series(column(records, [](const auto& r) { return r.rho; }));
  s.rho_norm = normalize_series(column(records, [](const auto& r) { return r.rho_norm; }));
  s.pi_star = normalize_series(column(records, [](const auto& r) { return r.pi_star; }));
  return s;
}

}  // namespace agenda_metrics
