#pragma once

// Independent reference scorer for tests. Shares no code with the library:
// its own character-level normalization, explicit window enumeration for
// n-grams, dense vectors over a linearly searched vocabulary, and the
// closed-form discounted sum for the rolling agenda.

#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

namespace naive {

inline std::set<std::string> load_stopwords(const std::string& path) {
  std::set<std::string> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty() && line[0] != '#') out.insert(line);
  }
  return out;
}

inline std::vector<std::string> normalize(std::string text) {
  for (const char* quote : {"\xE2\x80\x98", "\xE2\x80\x99"}) {
    for (auto pos = text.find(quote); pos != std::string::npos; pos = text.find(quote)) {
      text.erase(pos, 3);
    }
  }
  std::string cleaned;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (ch == '\'') continue;
    if (c >= 0x80) {
      cleaned.push_back(ch);
    } else if (ch >= 'A' && ch <= 'Z') {
      cleaned.push_back(static_cast<char>(ch + 32));
    } else if ((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9')) {
      cleaned.push_back(ch);
    } else {
      cleaned.push_back(' ');
    }
  }
  std::vector<std::string> words;
  std::string cur;
  for (char ch : cleaned + " ") {
    if (ch == ' ') {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  return words;
}

inline std::vector<std::string> grams(const std::string& text, const std::set<std::string>& stop,
                                      int n_max) {
  std::vector<std::string> content;
  for (const auto& w : normalize(text)) {
    if (!stop.count(w)) content.push_back(w);
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < content.size(); ++i) {
    std::string g;
    for (int k = 0; k < n_max && i + k < content.size(); ++k) {
      g += (k ? " " : "") + content[i + k];
      out.push_back(g);
    }
  }
  return out;
}

struct Row {
  double word_count, g, rho, rho_norm, pi_star;
};

struct Result {
  std::vector<std::string> vocab;
  std::vector<double> agenda;
  std::vector<std::vector<double>> question_tf;
  std::vector<Row> rows;
};

inline std::vector<double> dense(const std::vector<std::string>& vocab, const std::string& text,
                                 const std::set<std::string>& stop, int n_max) {
  std::vector<double> v(vocab.size(), 0.0);
  for (const auto& g : grams(text, stop, n_max)) {
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      if (vocab[j] == g) v[j] += 1.0;
    }
  }
  return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Result score(const std::vector<std::string>& questions,
                    const std::vector<std::string>& responses, const std::set<std::string>& stop,
                    int n_max, double gamma, double beta) {
  Result res;
  for (const auto& q : questions) {
    for (const auto& g : grams(q, stop, n_max)) {
      bool seen = false;
      for (const auto& v : res.vocab) seen = seen || v == g;
      if (!seen) res.vocab.push_back(g);
    }
  }
  for (const auto& q : questions) res.question_tf.push_back(dense(res.vocab, q, stop, n_max));
  res.agenda.assign(res.vocab.size(), 0.0);
  for (const auto& q : res.question_tf) {
    for (std::size_t j = 0; j < q.size(); ++j) res.agenda[j] += q[j];
  }
  const double norm_agenda = std::sqrt(dot(res.agenda, res.agenda));
  for (std::size_t t = 0; t < responses.size(); ++t) {
    std::vector<double> rolling(res.vocab.size(), 0.0);
    for (std::size_t i = 0; i <= t; ++i) {
      for (std::size_t j = 0; j < rolling.size(); ++j) {
        rolling[j] += std::pow(gamma, static_cast<double>(i)) * res.question_tf[t - i][j];
      }
    }
    const auto r = dense(res.vocab, responses[t], stop, n_max);
    Row row{};
    row.word_count = static_cast<double>(normalize(responses[t]).size());
    row.g = dot(r, res.agenda);
    row.rho = dot(r, rolling);
    const double norm_rolling = std::sqrt(dot(rolling, rolling));
    row.rho_norm = norm_rolling > 0 ? row.rho / norm_rolling : 0.0;
    row.pi_star = beta * row.rho_norm + (1 - beta) * (norm_agenda > 0 ? row.g / norm_agenda : 0.0);
    res.rows.push_back(row);
  }
  return res;
}

}  // namespace naive
