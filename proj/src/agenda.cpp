#include "agenda_metrics/agenda.hpp"

#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "agenda_metrics/error.hpp"

namespace agenda_metrics {

using nlohmann::json;

void Hyperparams::validate() const {
  // Negated comparisons so NaN is rejected too.
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must be in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ValidationError("beta must be in [0,1]");
}

TermVector phi(const Vocabulary& vocab, std::string_view text) {
  if (vocab.empty()) return {};
  std::vector<TermIndex> hits;
  for (const auto& key : content_ngram_keys(text, vocab.n_max(), vocab.stopwords())) {
    if (auto index = vocab.find(key)) hits.push_back(*index);
  }
  return TermVector::from_indices(std::move(hits));
}

TermVector build_agenda(const Vocabulary& vocab, std::span<const std::string> questions) {
  TermVector agenda;
  for (const auto& q : questions) agenda = agenda.plus_scaled(phi(vocab, q), 1.0);
  return agenda;
}

double agenda_score_g(const TermVector& response, const TermVector& agenda) {
  return response.dot(agenda);
}

TermVector rolling_agenda_step(const TermVector& previous, const TermVector& question,
                               double gamma) {
  return question.plus_scaled(previous, gamma, kRollingPruneEpsilon);
}

double responsiveness_rho(const TermVector& response, const TermVector& rolling) {
  return response.dot(rolling);
}

double combined_pi_star(double rho, double g, double norm_rolling, double norm_agenda,
                        double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ValidationError("beta must be in [0,1]");
  const double responsive = norm_rolling > 0.0 ? rho / norm_rolling : 0.0;
  const double aligned = norm_agenda > 0.0 ? g / norm_agenda : 0.0;
  return beta * responsive + (1.0 - beta) * aligned;
}

PreparedAgenda parse_prepared_agenda(std::string_view text,
                                     std::shared_ptr<const StopWords> stopwords) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("agenda: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("agenda: expected a JSON object");
  auto n_it = doc.find("n_max");
  if (n_it == doc.end() || !n_it->is_number_integer() || n_it->get<std::int64_t>() < 1) {
    throw ValidationError("agenda: \"n_max\" must be an integer >= 1");
  }
  auto e_it = doc.find("entries");
  if (e_it == doc.end() || !e_it->is_array()) {
    throw ValidationError("agenda: \"entries\" must be an array");
  }

  const int n_max = static_cast<int>(n_it->get<std::int64_t>());
  PreparedAgenda out{Vocabulary(n_max, std::move(stopwords)), {}};
  for (std::size_t i = 0; i < e_it->size(); ++i) {
    const json& entry = (*e_it)[i];
    const std::string where = "agenda: entries[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ValidationError(where + " must be an object");
    auto g_it = entry.find("ngram");
    auto w_it = entry.find("weight");
    if (g_it == entry.end() || !g_it->is_array() || g_it->empty()) {
      throw ValidationError(where + ".ngram must be a nonempty array of tokens");
    }
    if (static_cast<int>(g_it->size()) > n_max) {
      throw ValidationError(where + ".ngram is longer than n_max");
    }
    if (w_it == entry.end() || !w_it->is_number() || !(w_it->get<double>() > 0.0) ||
        !std::isfinite(w_it->get<double>())) {
      throw ValidationError(where + ".weight must be a number > 0");
    }
    NGram gram;
    for (const auto& tok : *g_it) {
      if (!tok.is_string()) throw ValidationError(where + ".ngram tokens must be strings");
      const auto& s = tok.get_ref<const std::string&>();
      auto normalized = tokenize(s);
      if (normalized.size() != 1 || normalized.front() != s) {
        throw ValidationError(where + ": \"" + s + "\" is not a normalized token");
      }
      if (out.vocab.stopwords().contains(s)) {
        throw ValidationError(where + ": \"" + s + "\" is a stop word");
      }
      gram.tokens.push_back(s);
    }
    const auto key = gram.key();
    if (out.vocab.find(key)) throw ValidationError(where + ": duplicate n-gram \"" + key + "\"");
    out.weights.add(out.vocab.insert(key), w_it->get<double>());
  }
  if (out.vocab.empty()) throw ValidationError("agenda: empty vocabulary");
  return out;
}

std::string serialize_prepared_agenda(const Vocabulary& vocab, const TermVector& weights) {
  json entries = json::array();
  for (const auto& e : weights.entries()) {
    entries.push_back({{"ngram", NGram::from_key(vocab.key(e.index)).tokens},
                       {"weight", e.weight}});
  }
  json doc = {{"n_max", vocab.n_max()}, {"entries", std::move(entries)}};
  return doc.dump(2) + "\n";
}

}  // namespace agenda_metrics
