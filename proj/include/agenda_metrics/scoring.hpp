#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agenda_metrics/agenda.hpp"
#include "agenda_metrics/lexicon.hpp"
#include "agenda_metrics/term_vector.hpp"
#include "agenda_metrics/transcript.hpp"

namespace agenda_metrics {

/// Tokenizer settings shared by vocabulary construction and phi.
struct TextConfig {
  int n_max = 3;
  std::shared_ptr<const StopWords> stopwords = StopWords::english();
};

struct ScoreRecord {
  std::size_t t = 0;
  std::int64_t word_count = 0;
  double g = 0.0;
  double rho = 0.0;
  double rho_norm = 0.0;  // rho / |a_t|, 0 when a_t is empty
  double pi_star = 0.0;
  int rank_wc = 0;  // 0 until assign_ranks runs
  int rank_g = 0;
  int rank_rho = 0;
  int rank_pi = 0;

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

struct WeightedNGram {
  std::string ngram;  // tokens joined by single spaces
  double weight = 0.0;

  friend bool operator==(const WeightedNGram&, const WeightedNGram&) = default;
};

/// Per-metric series divided by their maximum.
struct NormalizedSeries {
  std::vector<double> word_count;
  std::vector<double> g;
  std::vector<double> rho;
  std::vector<double> rho_norm;
  std::vector<double> pi_star;
};

struct SessionReport {
  std::string session_id;
  std::optional<int> child_age_years;
  Hyperparams params;
  std::vector<ScoreRecord> records;
  std::vector<WeightedNGram> agenda_top_k;
  NormalizedSeries normalized_series;
};

/// All four metrics of one response against the given agenda and rolling
/// agenda. Ranks are left at 0. The offline scorer and the live service both
/// go through here so their numbers agree to the bit.
ScoreRecord score_response(std::size_t t, const Vocabulary& vocab, const TermVector& agenda,
                           double agenda_norm, const TermVector& rolling,
                           std::string_view response, double beta);

/// Scores every response of an interview.
///
/// Without `prepared`, the vocabulary and agenda come from the interview's
/// own questions. With it, the prepared vocabulary replaces V and its weights
/// replace A, while the rolling agenda is still driven by the questions
/// actually asked, projected onto the prepared vocabulary.
SessionReport score_session(const Interview& interview, const Hyperparams& params,
                            const TextConfig& text = {},
                            const PreparedAgenda* prepared = nullptr, std::size_t top_k = 10);

/// Highest weights first, ties by vocabulary index; at most k entries.
std::vector<WeightedNGram> top_k_agenda(const TermVector& agenda, const Vocabulary& vocab,
                                        std::size_t k);

/// Competition ranking ("1224"), rank 1 for the maximum.
std::vector<int> rank_metric(std::span<const double> values);

/// Divides by the maximum; an all-zero series stays zero. Negative values throw.
std::vector<double> normalize_series(std::span<const double> values);

/// Tokens in the response before stop-word removal.
std::int64_t word_count(std::string_view response);

/// Fills rank_* of every record from the session's values.
void assign_ranks(std::vector<ScoreRecord>& records);

NormalizedSeries normalize_records(std::span<const ScoreRecord> records);

}  // namespace agenda_metrics
