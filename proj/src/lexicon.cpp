#include "agenda_metrics/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "agenda_metrics/error.hpp"

namespace agenda_metrics {

namespace detail {
extern const std::string_view kEnglishStopWordsId;
extern const std::string_view kEnglishStopWords;
}  // namespace detail

std::shared_ptr<const StopWords> StopWords::english() {
  static const auto list = [] {
    std::istringstream in{std::string(detail::kEnglishStopWords)};
    return std::make_shared<const StopWords>(
        StopWords::parse(in, std::string(detail::kEnglishStopWordsId)));
  }();
  return list;
}

std::shared_ptr<const StopWords> StopWords::none() {
  static const auto list = std::make_shared<const StopWords>("none", std::unordered_set<Token>{});
  return list;
}

StopWords StopWords::parse(std::istream& in, std::string id) {
  std::unordered_set<Token> words;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (auto& tok : tokenize(line)) words.insert(std::move(tok));
  }
  return StopWords(std::move(id), std::move(words));
}

StopWords StopWords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stop-word file " + path.string());
  return parse(in, "file:" + path.filename().string());
}

bool StopWords::contains(std::string_view token) const {
  return words_.find(std::string(token)) != words_.end();
}

namespace {

enum class CharClass { keep, drop, split };

// Classifies the UTF-8 sequence starting at text[i] and reports its length.
CharClass classify(std::string_view text, std::size_t i, std::size_t& len) {
  const auto c = static_cast<unsigned char>(text[i]);
  len = 1;
  if (c < 0x80) {
    if (c == '\'') return CharClass::drop;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
      return CharClass::keep;
    }
    return CharClass::split;
  }
  // U+00A0 no-break space
  if (c == 0xC2 && i + 1 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0xA0) {
    len = 2;
    return CharClass::split;
  }
  // General Punctuation block U+2000..U+206F: E2 80 xx / E2 81 xx.
  if (c == 0xE2 && i + 2 < text.size()) {
    const auto c1 = static_cast<unsigned char>(text[i + 1]);
    const auto c2 = static_cast<unsigned char>(text[i + 2]);
    if (c1 == 0x80 || c1 == 0x81) {
      len = 3;
      // U+2018 / U+2019 typographic apostrophes
      if (c1 == 0x80 && (c2 == 0x98 || c2 == 0x99)) return CharClass::drop;
      return CharClass::split;
    }
  }
  return CharClass::keep;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  Token current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = 1;
    switch (classify(text, i, len)) {
      case CharClass::keep:
        for (std::size_t k = 0; k < len; ++k) {
          char ch = text[i + k];
          if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
          current.push_back(ch);
        }
        break;
      case CharClass::drop:
        break;
      case CharClass::split:
        flush();
        break;
    }
    i += len;
  }
  flush();
  return out;
}

std::vector<Token> remove_stopwords(std::vector<Token> tokens, const StopWords& stopwords) {
  std::erase_if(tokens, [&](const Token& t) { return stopwords.contains(t); });
  return tokens;
}

std::string NGram::key() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

NGram NGram::from_key(std::string_view key) {
  NGram out;
  std::size_t pos = 0;
  while (pos < key.size()) {
    auto next = key.find(' ', pos);
    if (next == std::string_view::npos) next = key.size();
    if (next > pos) out.tokens.emplace_back(key.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::vector<NGram> extract_ngrams(std::span<const Token> tokens, int n_max) {
  std::vector<NGram> out;
  const auto len = static_cast<int>(tokens.size());
  for (int n = 1; n <= std::min(n_max, len); ++n) {
    for (int start = 0; start + n <= len; ++start) {
      out.push_back(NGram{{tokens.begin() + start, tokens.begin() + start + n}});
    }
  }
  return out;
}

std::vector<std::string> content_ngram_keys(std::string_view text, int n_max,
                                            const StopWords& stopwords) {
  const auto tokens = remove_stopwords(tokenize(text), stopwords);
  std::vector<std::string> keys;
  const auto len = static_cast<int>(tokens.size());
  for (int n = 1; n <= std::min(n_max, len); ++n) {
    for (int start = 0; start + n <= len; ++start) {
      std::string key = tokens[start];
      for (int k = 1; k < n; ++k) {
        key.push_back(' ');
        key += tokens[start + k];
      }
      keys.push_back(std::move(key));
    }
  }
  return keys;
}

Vocabulary::Vocabulary(int n_max, std::shared_ptr<const StopWords> stopwords)
    : n_max_(n_max), stopwords_(std::move(stopwords)) {
  if (n_max_ < 1) throw ValidationError("nmax must be >= 1");
  if (!stopwords_) stopwords_ = StopWords::none();
}

void Vocabulary::extend(std::string_view text) {
  for (auto& key : content_ngram_keys(text, n_max_, *stopwords_)) insert(std::move(key));
}

TermIndex Vocabulary::insert(std::string key) {
  auto [it, inserted] = index_.try_emplace(key, static_cast<TermIndex>(keys_.size()));
  if (inserted) keys_.push_back(std::move(key));
  return it->second;
}

std::optional<TermIndex> Vocabulary::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const std::string> questions, int n_max,
                            std::shared_ptr<const StopWords> stopwords) {
  if (questions.empty()) throw ValidationError("no questions; agenda undefined");
  Vocabulary vocab(n_max, std::move(stopwords));
  for (const auto& q : questions) vocab.extend(q);
  if (vocab.empty()) throw ValidationError("empty vocabulary");
  return vocab;
}

}  // namespace agenda_metrics
