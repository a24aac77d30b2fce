#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agenda_metrics {

enum class Speaker { interviewer, child };

std::string_view to_string(Speaker speaker) noexcept;

/// Case-insensitive "interviewer" / "child".
std::optional<Speaker> parse_speaker(std::string_view label) noexcept;

struct RawTurn {
  std::int64_t index = 0;
  Speaker speaker = Speaker::interviewer;
  std::string text;

  friend bool operator==(const RawTurn&, const RawTurn&) = default;
};

/// One question/response pair (q_t, r_t).
struct Exchange {
  std::string question;
  std::string response;

  friend bool operator==(const Exchange&, const Exchange&) = default;
};

struct SessionMeta {
  std::string session_id;
  std::optional<int> child_age_years;
};

struct Interview {
  std::string session_id;
  std::optional<int> child_age_years;
  std::vector<Exchange> pairs;

  std::vector<std::string> questions() const;
};

/// Reads transcript JSONL: one {"turn", "speaker", "text"} object per line.
/// Blank lines are skipped. Throws ParseError on malformed JSON or missing
/// fields and ValidationError on unknown speakers or non-increasing turn
/// indices, both carrying the 1-based line number.
std::vector<RawTurn> parse_transcript(std::istream& in);
std::vector<RawTurn> parse_transcript(std::string_view jsonl);

/// Folds a raw turn stream into strictly alternating (question, response) pairs.
///
/// Runs of same-speaker turns are joined with a single space, child speech
/// before the first question is dropped, and a trailing unanswered question
/// is kept with an empty response. Throws ValidationError when the stream
/// holds no interviewer turn.
std::vector<Exchange> pair_turns(std::span<const RawTurn> turns);

SessionMeta parse_session_meta(std::string_view json);

/// Sidecar metadata path for a transcript: "<stem>.meta.json" next to it.
std::filesystem::path meta_path_for(const std::filesystem::path& transcript);

/// Loads and pairs a transcript. Metadata comes from `meta` when given,
/// otherwise from the sidecar file if present; session_id defaults to the
/// transcript's file stem.
Interview load_interview(const std::filesystem::path& transcript,
                         const std::optional<std::filesystem::path>& meta = std::nullopt);

}  // namespace agenda_metrics
