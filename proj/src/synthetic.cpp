#include "agenda_metrics/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "agenda_metrics/error.hpp"

namespace agenda_metrics {

using nlohmann::json;

SyntheticConfig parse_synthetic_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("generator config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("generator config: expected a JSON object");

  SyntheticConfig cfg;
  auto read_int = [&](const char* key, auto& dst, long long min) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_number_integer() || it->get<long long>() < min) {
      throw ValidationError(std::string("generator config: \"") + key + "\" must be an integer >= " +
                            std::to_string(min));
    }
    dst = static_cast<std::remove_reference_t<decltype(dst)>>(it->get<long long>());
  };
  read_int("seed", cfg.seed, 0);
  read_int("n_sessions", cfg.n_sessions, 1);
  read_int("turns_per_session", cfg.turns_per_session, 1);
  if (auto it = doc.find("age_range"); it != doc.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
        !(*it)[1].is_number_integer()) {
      throw ValidationError("generator config: \"age_range\" must be [min, max]");
    }
    cfg.min_age = (*it)[0].get<int>();
    cfg.max_age = (*it)[1].get<int>();
  }
  if (cfg.min_age < 0 || cfg.min_age > cfg.max_age) {
    throw ValidationError("generator config: invalid age_range");
  }
  return cfg;
}

namespace {

constexpr std::array<std::string_view, 40> kTopicWords = {
    "bathroom", "garage",  "uncle",   "touched", "outside", "clothes",  "pinched", "cousin",
    "private",  "doors",   "legs",    "aunt",    "pants",   "grandma",  "bedroom", "couch",
    "basement", "car",     "shower",  "hurt",    "secret",  "blanket",  "window",  "kitchen",
    "neighbor", "hallway", "bed",     "skirt",   "shirt",   "stepdad",  "babysitter", "yard",
    "hit",      "grabbed", "yelled",  "closet",  "truck",   "bath",     "night",   "mad"};

constexpr std::array<std::string_view, 48> kFillerWords = {
    "school",   "friends",  "play",    "teacher", "recess",  "pizza",   "dog",     "cat",
    "game",     "movie",    "cartoon", "soccer",  "lunch",   "class",   "student", "new",
    "like",     "fun",      "toys",    "park",    "bike",    "swim",    "draw",    "read",
    "book",     "music",    "song",    "dance",   "birthday", "cake",   "summer",  "beach",
    "puppy",    "sister",   "brother", "video",   "lego",    "blocks",  "colors",  "crayons",
    "slide",    "swing",    "snack",   "juice",   "cookie",  "sandwich", "soup",   "apple"};

constexpr std::array<std::string_view, 24> kFunctionWords = {
    "i",   "the",  "and",  "was", "he",   "she",  "it",   "a",
    "to",  "my",   "we",   "in",  "then", "that", "with", "you",
    "me",  "they", "at",   "so",  "is",   "of",   "on",   "just"};

constexpr std::array<std::string_view, 6> kQuestionFrames = {
    "can you tell me about the", "what happened with the", "did he say anything about the",
    "where were you when the",   "tell me more about the", "what do you remember about the"};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  int between(int lo, int hi) { return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo + 1))); }

  template <typename Seq>
  std::string_view pick(const Seq& seq) {
    return seq[index(seq.size())];
  }

 private:
  std::mt19937_64 engine_;
};

std::string join(const std::vector<std::string_view>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(' ');
    out += words[i];
  }
  return out;
}

}  // namespace

std::vector<Interview> generate_corpus(const SyntheticConfig& config) {
  Draw draw(config.seed);
  std::vector<Interview> out;
  out.reserve(static_cast<std::size_t>(config.n_sessions));

  for (int s = 0; s < config.n_sessions; ++s) {
    Interview iv;
    char id[32];
    std::snprintf(id, sizeof id, "syn-%05d", s);
    iv.session_id = id;
    const int age = draw.between(config.min_age, config.max_age);
    iv.child_age_years = age;

    std::vector<std::string_view> topics;
    while (topics.size() < 6) {
      auto w = draw.pick(kTopicWords);
      if (std::find(topics.begin(), topics.end(), w) == topics.end()) topics.push_back(w);
    }

    for (int t = 0; t < config.turns_per_session; ++t) {
      std::vector<std::string_view> question{draw.pick(kQuestionFrames)};
      std::vector<std::string_view> asked{topics[draw.index(topics.size())]};
      if (draw.unit() < 0.4) asked.push_back(topics[draw.index(topics.size())]);
      question.insert(question.end(), asked.begin(), asked.end());

      // Verbosity grows with age; echoed topic words do not depend on it.
      const double jitter = 6.0 * draw.unit() - 3.0;
      const int length = std::max(1, static_cast<int>(std::lround(2.0 + 0.9 * age + jitter)));
      const double u = draw.unit();
      const int echoes = std::min(length, u < 0.5 ? 0 : (u < 0.85 ? 1 : 2));

      std::vector<std::string_view> response;
      for (int i = 0; i < length - echoes; ++i) {
        response.push_back(draw.unit() < 0.5 ? draw.pick(kFunctionWords)
                                             : draw.pick(kFillerWords));
      }
      for (int e = 0; e < echoes; ++e) {
        auto word = draw.unit() < 0.7 ? asked[draw.index(asked.size())]
                                      : topics[draw.index(topics.size())];
        response.insert(response.begin() + static_cast<std::ptrdiff_t>(
                                               draw.index(response.size() + 1)),
                        word);
      }
      iv.pairs.push_back({join(question), join(response)});
    }
    out.push_back(std::move(iv));
  }
  return out;
}

void write_corpus(const std::filesystem::path& dir, const std::vector<Interview>& sessions) {
  std::filesystem::create_directories(dir);
  for (const auto& iv : sessions) {
    std::ofstream jsonl(dir / (iv.session_id + ".jsonl"), std::ios::binary);
    if (!jsonl) throw ValidationError("cannot write to " + dir.string());
    std::int64_t turn = 0;
    for (const auto& p : iv.pairs) {
      jsonl << json{{"turn", turn++}, {"speaker", "interviewer"}, {"text", p.question}}.dump()
            << '\n';
      jsonl << json{{"turn", turn++}, {"speaker", "child"}, {"text", p.response}}.dump() << '\n';
    }
    json meta = {{"session_id", iv.session_id}};
    meta["child_age_years"] = iv.child_age_years ? json(*iv.child_age_years) : json(nullptr);
    std::ofstream(dir / (iv.session_id + ".meta.json"), std::ios::binary) << meta.dump() << '\n';
  }
}

}  // namespace agenda_metrics
