#include "agenda_metrics/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace agenda_metrics {

std::string format_fixed(double value, int precision) {
  std::array<char, 64> buf{};
  auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, precision);
  if (ec != std::errc{}) return std::to_string(value);
  std::string out(buf.data(), end);
  // No "-0.000000" for values that round to zero from below.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

void write_score_csv(std::ostream& out, const SessionReport& report) {
  out << "t,word_count,g,rho,rho_norm,pi_star,rank_wc,rank_g,rank_rho,rank_pi\n";
  for (const auto& r : report.records) {
    out << r.t << ',' << r.word_count << ',' << format_fixed(r.g) << ','
        << format_fixed(r.rho) << ',' << format_fixed(r.rho_norm) << ','
        << format_fixed(r.pi_star) << ',' << r.rank_wc << ',' << r.rank_g << ','
        << r.rank_rho << ',' << r.rank_pi << '\n';
  }
}

std::string score_csv(const SessionReport& report) {
  std::ostringstream out;
  write_score_csv(out, report);
  return out.str();
}

void write_series_csv(std::ostream& out, const SessionReport& report) {
  const auto& s = report.normalized_series;
  out << "t,word_count,g,rho,rho_norm,pi_star\n";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    out << report.records[i].t << ',' << format_fixed(s.word_count[i]) << ','
        << format_fixed(s.g[i]) << ',' << format_fixed(s.rho[i]) << ','
        << format_fixed(s.rho_norm[i]) << ',' << format_fixed(s.pi_star[i]) << '\n';
  }
}

void write_top_k_tsv(std::ostream& out, std::span<const WeightedNGram> entries) {
  for (const auto& e : entries) {
    out << e.ngram << '\t';
    if (e.weight == std::floor(e.weight) && std::abs(e.weight) < 1e15) {
      out << static_cast<long long>(e.weight);
    } else {
      out << format_fixed(e.weight);
    }
    out << '\n';
  }
}

}  // namespace agenda_metrics
