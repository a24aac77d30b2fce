#include "agenda_metrics/transcript.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "agenda_metrics/error.hpp"

namespace agenda_metrics {

using nlohmann::json;

std::string_view to_string(Speaker speaker) noexcept {
  return speaker == Speaker::interviewer ? "interviewer" : "child";
}

std::optional<Speaker> parse_speaker(std::string_view label) noexcept {
  std::string lower(label);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "interviewer") return Speaker::interviewer;
  if (lower == "child") return Speaker::child;
  return std::nullopt;
}

std::vector<std::string> Interview::questions() const {
  std::vector<std::string> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.question);
  return out;
}

namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

RawTurn parse_turn_line(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");

  auto require = [&](const char* key) -> const json& {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(line_no, std::string("missing key \"") + key + "\"");
    return *it;
  };
  const json& turn = require("turn");
  const json& speaker = require("speaker");
  const json& text = require("text");
  if (!turn.is_number_integer()) throw ParseError(line_no, "\"turn\" must be an integer");
  if (!speaker.is_string()) throw ParseError(line_no, "\"speaker\" must be a string");
  if (!text.is_string()) throw ParseError(line_no, "\"text\" must be a string");

  RawTurn out;
  out.index = turn.get<std::int64_t>();
  if (out.index < 0) throw ValidationError(line_no, "\"turn\" must be non-negative");
  auto role = parse_speaker(speaker.get_ref<const std::string&>());
  if (!role) {
    throw ValidationError(line_no,
                          "unknown speaker \"" + speaker.get<std::string>() + "\"");
  }
  out.speaker = *role;
  out.text = text.get<std::string>();
  return out;
}

}  // namespace

std::vector<RawTurn> parse_transcript(std::istream& in) {
  std::vector<RawTurn> turns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    RawTurn turn = parse_turn_line(line, line_no);
    if (!turns.empty() && turn.index <= turns.back().index) {
      throw ValidationError(line_no, "turn indices must strictly increase");
    }
    turns.push_back(std::move(turn));
  }
  return turns;
}

std::vector<RawTurn> parse_transcript(std::string_view jsonl) {
  std::istringstream in{std::string(jsonl)};
  return parse_transcript(in);
}

std::vector<Exchange> pair_turns(std::span<const RawTurn> turns) {
  // Collapse speaker runs first, then walk the runs pairwise.
  struct Run {
    Speaker speaker;
    std::string text;
  };
  std::vector<Run> runs;
  for (const auto& turn : turns) {
    if (!runs.empty() && runs.back().speaker == turn.speaker) {
      runs.back().text += ' ';
      runs.back().text += turn.text;
    } else {
      runs.push_back({turn.speaker, turn.text});
    }
  }

  std::vector<Exchange> pairs;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].speaker != Speaker::interviewer) continue;  // leading child speech
    Exchange ex{std::move(runs[i].text), {}};
    if (i + 1 < runs.size()) ex.response = std::move(runs[++i].text);
    pairs.push_back(std::move(ex));
  }
  if (pairs.empty()) throw ValidationError("no questions; agenda undefined");
  return pairs;
}

SessionMeta parse_session_meta(std::string_view text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, std::string("malformed session metadata: ") + e.what());
  }
  if (!obj.is_object()) throw ValidationError("session metadata must be a JSON object");

  SessionMeta meta;
  if (auto it = obj.find("session_id"); it != obj.end()) {
    if (!it->is_string()) throw ValidationError("\"session_id\" must be a string");
    meta.session_id = it->get<std::string>();
  }
  if (auto it = obj.find("child_age_years"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      throw ValidationError("\"child_age_years\" must be an integer or null");
    }
    const auto age = it->get<std::int64_t>();
    if (age < 0 || age > 200) throw ValidationError("\"child_age_years\" out of range");
    meta.child_age_years = static_cast<int>(age);
  }
  return meta;
}

std::filesystem::path meta_path_for(const std::filesystem::path& transcript) {
  auto out = transcript;
  out.replace_extension(".meta.json");
  return out;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Interview load_interview(const std::filesystem::path& transcript,
                         const std::optional<std::filesystem::path>& meta) {
  std::ifstream in(transcript, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + transcript.string());

  Interview out;
  out.session_id = transcript.stem().string();
  out.pairs = pair_turns(parse_transcript(in));

  std::optional<std::filesystem::path> meta_file = meta;
  if (!meta_file) {
    auto sidecar = meta_path_for(transcript);
    if (std::filesystem::exists(sidecar)) meta_file = sidecar;
  }
  if (meta_file) {
    SessionMeta m = parse_session_meta(read_file(*meta_file));
    if (!m.session_id.empty()) out.session_id = std::move(m.session_id);
    out.child_age_years = m.child_age_years;
  }
  return out;
}

}  // namespace agenda_metrics
