#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "agenda_metrics/agenda.hpp"
#include "agenda_metrics/error.hpp"
#include "agenda_metrics/scoring.hpp"
#include "agenda_metrics/transcript.hpp"

namespace httplib {
class Server;
}

namespace agenda_metrics::service {

class NotFound : public Error {
 public:
  using Error::Error;
};

class Conflict : public Error {
 public:
  using Error::Error;
};

enum class Mode { self_building, prepared_agenda };

std::string_view to_string(Mode mode) noexcept;

/// A score record stamped with the revision that produced it.
struct LiveRecord {
  std::uint64_t revision = 0;
  ScoreRecord record;
};

struct AppendResult {
  std::uint64_t revision = 0;
  std::optional<ScoreRecord> latest;  // set for child turns
};

struct ScoresView {
  std::uint64_t revision = 0;
  std::vector<LiveRecord> records;
};

struct AgendaView {
  std::vector<WeightedNGram> top_k;
  std::vector<WeightedNGram> rolling_top_k;
  double coverage = 0.0;  // agenda mass matched by at least one response
};

/// One interview being scored while it happens.
///
/// Interviewer turns advance the question side (vocabulary growth in
/// self-building mode, agenda-so-far, rolling agenda); child turns are scored
/// immediately against that state. Writers take the session lock exclusively
/// and readers share it, so a reader always sees a matching
/// (revision, records) pair.
class LiveSession {
 public:
  LiveSession(std::string id, Hyperparams params, TextConfig text,
              std::optional<PreparedAgenda> prepared);

  /// Throws Conflict once the session is finalized.
  AppendResult append_turn(Speaker speaker, std::string text);

  /// Records with revision > since.
  ScoresView scores_since(std::uint64_t since) const;

  AgendaView agenda_view(std::size_t k) const;

  /// Rescores the whole turn log through the offline pipeline and freezes the
  /// session. Throws Conflict when already finalized and ValidationError when
  /// the log holds no question.
  SessionReport finalize();

  const std::string& id() const noexcept { return id_; }
  Mode mode() const noexcept { return prepared_ ? Mode::prepared_agenda : Mode::self_building; }
  const Hyperparams& params() const noexcept { return params_; }
  std::uint64_t revision() const;
  bool finalized() const;

 private:
  const Vocabulary& vocab() const noexcept { return prepared_ ? prepared_->vocab : live_vocab_; }
  const TermVector& agenda() const noexcept {
    return prepared_ ? prepared_->weights : live_agenda_;
  }

  const std::string id_;
  const Hyperparams params_;
  const TextConfig text_;
  const std::optional<PreparedAgenda> prepared_;

  mutable std::shared_mutex mutex_;
  Vocabulary live_vocab_;
  TermVector live_agenda_;
  TermVector rolling_;
  std::vector<RawTurn> log_;
  std::vector<std::string> responses_;
  std::vector<LiveRecord> records_;
  std::uint64_t revision_ = 0;
  bool finalized_ = false;
};

/// In-memory registry of live sessions.
class SessionStore {
 public:
  explicit SessionStore(TextConfig text = {},
                        std::optional<std::filesystem::path> snapshot_dir = std::nullopt);

  std::shared_ptr<LiveSession> create(Hyperparams params,
                                      std::optional<PreparedAgenda> prepared);

  /// Throws NotFound.
  std::shared_ptr<LiveSession> get(const std::string& id) const;

  /// Finalizes and, when a snapshot directory is configured, writes <id>.json.
  SessionReport finalize(const std::string& id);

  const TextConfig& text() const noexcept { return text_; }

 private:
  TextConfig text_;
  std::optional<std::filesystem::path> snapshot_dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<LiveSession>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// POST /sessions, POST /sessions/{id}/turns, GET /sessions/{id}/scores?since=N,
/// GET /sessions/{id}/agenda?k=K, POST /sessions/{id}/finalize.
void register_routes(httplib::Server& server, SessionStore& store);

}  // namespace agenda_metrics::service
