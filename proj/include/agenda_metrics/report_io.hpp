#pragma once

#include <ostream>
#include <span>
#include <string>

#include "agenda_metrics/scoring.hpp"

namespace agenda_metrics {

/// Locale-independent fixed notation.
std::string format_fixed(double value, int precision = 6);

/// Header plus one row per record:
/// t,word_count,g,rho,rho_norm,pi_star,rank_wc,rank_g,rank_rho,rank_pi
void write_score_csv(std::ostream& out, const SessionReport& report);
std::string score_csv(const SessionReport& report);

/// t,word_count,g,rho,rho_norm,pi_star with each column scaled to its maximum.
void write_series_csv(std::ostream& out, const SessionReport& report);

/// "ngram<TAB>weight" per line, no header. Integral weights print without decimals.
void write_top_k_tsv(std::ostream& out, std::span<const WeightedNGram> entries);

}  // namespace agenda_metrics
