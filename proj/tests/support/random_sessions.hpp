#pragma once

// Seeded random interviews for property tests: short questions and answers
// over a small pool mixing content words, stop words, casing and punctuation.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "agenda_metrics/lexicon.hpp"
#include "agenda_metrics/transcript.hpp"

namespace testing_support {

inline constexpr std::array<const char*, 14> kContent = {
    "touch", "outside", "bathroom", "garage", "uncle", "clothes", "Mom",
    "car",   "school",  "door",     "legs",   "it's",  "I'd",    "pinched"};
inline constexpr std::array<const char*, 10> kStop = {"did", "he", "you", "the", "where",
                                                     "was", "me", "and", "to",  "my"};
// Never appear in any question, so answers built from them share no n-gram.
inline constexpr std::array<const char*, 8> kOffTopic = {"pizza", "recess", "friends", "soccer",
                                                         "cartoon", "teacher", "lunch", "puppy"};
inline constexpr std::array<const char*, 5> kPunct = {"", ",", "?", "!", "."};

struct RandomSession {
  std::vector<std::string> questions;
  std::vector<std::string> responses;

  agenda_metrics::Interview interview(std::string id = "random") const {
    agenda_metrics::Interview iv;
    iv.session_id = std::move(id);
    for (std::size_t i = 0; i < questions.size(); ++i) {
      iv.pairs.push_back({questions[i], responses[i]});
    }
    return iv;
  }
};

class SessionGenerator {
 public:
  explicit SessionGenerator(std::uint32_t seed) : rng_(seed) {}

  /// Up to 20 turns, vocabulary of at most 50 entries under `stopwords`;
  /// with `off_topic` every answer draws only from kOffTopic.
  RandomSession next(const agenda_metrics::StopWords& stopwords, bool off_topic = false) {
    for (;;) {
      RandomSession s;
      const int turns = 1 + pick(20);
      for (int t = 0; t < turns; ++t) {
        s.questions.push_back(sentence(1 + pick(5), false));
        s.responses.push_back(sentence(pick(8), off_topic));
      }
      agenda_metrics::Vocabulary v(3, std::shared_ptr<const agenda_metrics::StopWords>(
                                          &stopwords, [](const auto*) {}));
      for (const auto& q : s.questions) v.extend(q);
      if (!v.empty() && v.size() <= 50) return s;
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string sentence(int words, bool off_topic) {
    std::string out;
    for (int i = 0; i < words; ++i) {
      if (i) out += ' ';
      if (off_topic) {
        out += pick(3) == 0 ? kStop[pick(kStop.size())] : kOffTopic[pick(kOffTopic.size())];
      } else {
        out += pick(3) == 0 ? kStop[pick(kStop.size())] : kContent[pick(kContent.size())];
      }
      out += kPunct[pick(kPunct.size())];
    }
    return out;
  }

  std::mt19937 rng_;
};

}  // namespace testing_support
