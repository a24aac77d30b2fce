#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace agenda_metrics {

/// Lowercase, punctuation-free, whitespace-free, nonempty.
using Token = std::string;

class StopWords {
 public:
  StopWords() = default;
  StopWords(std::string id, std::unordered_set<Token> words)
      : id_(std::move(id)), words_(std::move(words)) {}

  /// The pinned English list shipped in data/stopwords_en.txt.
  static std::shared_ptr<const StopWords> english();
  static std::shared_ptr<const StopWords> none();

  /// One token per line, '#' starts a comment line. Lines are normalized
  /// with tokenize(), so "Don't" and "dont" are the same entry.
  static StopWords parse(std::istream& in, std::string id);
  static StopWords load(const std::filesystem::path& path);

  bool contains(std::string_view token) const;
  const std::string& id() const noexcept { return id_; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::string id_;
  std::unordered_set<Token> words_;
};

/// Lowercases ASCII, deletes apostrophes in place (i'd -> id), turns every
/// other punctuation character into a separator and splits on whitespace.
/// Non-ASCII letters pass through unchanged.
std::vector<Token> tokenize(std::string_view text);

std::vector<Token> remove_stopwords(std::vector<Token> tokens, const StopWords& stopwords);

struct NGram {
  std::vector<Token> tokens;

  /// Tokens joined by single spaces; unambiguous because tokens hold no whitespace.
  std::string key() const;
  static NGram from_key(std::string_view key);

  friend bool operator==(const NGram&, const NGram&) = default;
};

/// All contiguous runs of length 1..n_max, shortest first, each length in
/// positional order. Duplicates are kept.
std::vector<NGram> extract_ngrams(std::span<const Token> tokens, int n_max);

/// tokenize -> remove_stopwords -> extract_ngrams, returned as keys.
std::vector<std::string> content_ngram_keys(std::string_view text, int n_max,
                                            const StopWords& stopwords);

using TermIndex = std::uint32_t;

/// Unique n-grams with stable first-occurrence indices.
class Vocabulary {
 public:
  Vocabulary(int n_max, std::shared_ptr<const StopWords> stopwords);

  /// Adds every content n-gram of `text`; existing indices never move.
  void extend(std::string_view text);

  /// Inserts a single n-gram key, returning its index (existing or new).
  TermIndex insert(std::string key);

  std::optional<TermIndex> find(const std::string& key) const;
  const std::string& key(TermIndex index) const { return keys_.at(index); }
  std::span<const std::string> keys() const noexcept { return keys_; }

  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  int n_max() const noexcept { return n_max_; }
  const StopWords& stopwords() const noexcept { return *stopwords_; }
  const std::shared_ptr<const StopWords>& stopwords_ptr() const noexcept { return stopwords_; }
  const std::string& stopword_set_id() const noexcept { return stopwords_->id(); }

 private:
  int n_max_;
  std::shared_ptr<const StopWords> stopwords_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, TermIndex> index_;
};

/// Union of content n-grams over the questions. Throws ValidationError
/// ("empty vocabulary") when nothing survives stop-word filtering.
Vocabulary build_vocabulary(std::span<const std::string> questions, int n_max,
                            std::shared_ptr<const StopWords> stopwords);

}  // namespace agenda_metrics
