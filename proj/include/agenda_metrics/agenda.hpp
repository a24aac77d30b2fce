#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "agenda_metrics/lexicon.hpp"
#include "agenda_metrics/term_vector.hpp"

namespace agenda_metrics {

/// Discounted entries of the rolling agenda below this are dropped.
inline constexpr double kRollingPruneEpsilon = 1e-12;

struct Hyperparams {
  double gamma = 0.5;  // discount of earlier questions in the rolling agenda
  double beta = 0.5;   // weight of responsiveness against agenda alignment

  /// Throws ValidationError("gamma must be in [0,1]") and likewise for beta.
  void validate() const;
};

/// Raw term frequency of each vocabulary n-gram in the content n-grams of `text`.
TermVector phi(const Vocabulary& vocab, std::string_view text);

/// Sum of phi over all questions.
TermVector build_agenda(const Vocabulary& vocab, std::span<const std::string> questions);

/// g(r) = r . A
double agenda_score_g(const TermVector& response, const TermVector& agenda);

/// a_t = phi(q_t) + gamma * a_{t-1}; pass an empty vector for a_{-1}.
TermVector rolling_agenda_step(const TermVector& previous, const TermVector& question,
                               double gamma);

/// rho(r) = r . a_t, with a_t already containing the current question.
double responsiveness_rho(const TermVector& response, const TermVector& rolling);

/// beta * rho/|a_t| + (1 - beta) * g/|A|. A term with a zero norm contributes 0.
/// Throws ValidationError when beta is outside [0,1].
double combined_pi_star(double rho, double g, double norm_rolling, double norm_agenda,
                        double beta);

/// Externally authored agenda: its own vocabulary plus positive weights.
struct PreparedAgenda {
  Vocabulary vocab;
  TermVector weights;
};

/// Parses {"n_max": int, "entries": [{"ngram": [...], "weight": number}, ...]}.
/// Tokens must already be normalized, contain no stop word, be unique and
/// have length <= n_max; weights must be > 0.
PreparedAgenda parse_prepared_agenda(std::string_view json,
                                     std::shared_ptr<const StopWords> stopwords);

/// Inverse of parse_prepared_agenda, entries in vocabulary order.
std::string serialize_prepared_agenda(const Vocabulary& vocab, const TermVector& weights);

}  // namespace agenda_metrics
