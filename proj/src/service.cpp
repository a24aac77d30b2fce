#include "agenda_metrics/service.hpp"

#include <fstream>
#include <mutex>

#include "report_json.hpp"

namespace agenda_metrics::service {

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::prepared_agenda ? "prepared_agenda" : "self_building";
}

LiveSession::LiveSession(std::string id, Hyperparams params, TextConfig text,
                         std::optional<PreparedAgenda> prepared)
    : id_(std::move(id)),
      params_(params),
      text_(std::move(text)),
      prepared_(std::move(prepared)),
      live_vocab_(text_.n_max, text_.stopwords) {
  params_.validate();
}

AppendResult LiveSession::append_turn(Speaker speaker, std::string text) {
  std::unique_lock lock(mutex_);
  if (finalized_) throw Conflict("session " + id_ + " is finalized");

  AppendResult result;
  if (speaker == Speaker::interviewer) {
    if (!prepared_) live_vocab_.extend(text);
    const TermVector q = phi(vocab(), text);
    if (!prepared_) live_agenda_ = live_agenda_.plus_scaled(q, 1.0);
    rolling_ = rolling_agenda_step(rolling_, q, params_.gamma);
  } else {
    const ScoreRecord rec = score_response(records_.size(), vocab(), agenda(), agenda().norm(),
                                           rolling_, text, params_.beta);
    records_.push_back({revision_ + 1, rec});
    responses_.push_back(text);
    result.latest = rec;
  }
  log_.push_back({static_cast<std::int64_t>(log_.size()), speaker, std::move(text)});
  result.revision = ++revision_;
  return result;
}

ScoresView LiveSession::scores_since(std::uint64_t since) const {
  std::shared_lock lock(mutex_);
  ScoresView view;
  view.revision = revision_;
  for (const auto& r : records_) {
    if (r.revision > since) view.records.push_back(r);
  }
  return view;
}

AgendaView LiveSession::agenda_view(std::size_t k) const {
  std::shared_lock lock(mutex_);
  AgendaView view;
  const Vocabulary& v = vocab();
  const TermVector& a = agenda();
  view.top_k = top_k_agenda(a, v, k);
  view.rolling_top_k = top_k_agenda(rolling_, v, k);

  const double total = a.total();
  if (total > 0.0) {
    TermVector matched;
    for (const auto& response : responses_) {
      const TermVector tf = phi(v, response);
      for (const auto& e : tf.entries()) {
        if (matched.weight(e.index) == 0.0) matched.add(e.index, 1.0);
      }
    }
    double covered = 0.0;
    for (const auto& e : matched.entries()) covered += a.weight(e.index);
    view.coverage = covered / total;
  }
  return view;
}

SessionReport LiveSession::finalize() {
  std::unique_lock lock(mutex_);
  if (finalized_) throw Conflict("session " + id_ + " is already finalized");

  Interview interview;
  interview.session_id = id_;
  interview.pairs = pair_turns(log_);
  SessionReport report = score_session(interview, params_, text_, prepared_ ? &*prepared_ : nullptr);
  finalized_ = true;
  return report;
}

std::uint64_t LiveSession::revision() const {
  std::shared_lock lock(mutex_);
  return revision_;
}

bool LiveSession::finalized() const {
  std::shared_lock lock(mutex_);
  return finalized_;
}

SessionStore::SessionStore(TextConfig text, std::optional<std::filesystem::path> snapshot_dir)
    : text_(std::move(text)), snapshot_dir_(std::move(snapshot_dir)) {}

std::shared_ptr<LiveSession> SessionStore::create(Hyperparams params,
                                                  std::optional<PreparedAgenda> prepared) {
  params.validate();
  std::unique_lock lock(mutex_);
  std::string id = "s" + std::to_string(next_id_++);
  auto session = std::make_shared<LiveSession>(id, params, text_, std::move(prepared));
  sessions_.emplace(std::move(id), session);
  return session;
}

std::shared_ptr<LiveSession> SessionStore::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session " + id);
  return it->second;
}

SessionReport SessionStore::finalize(const std::string& id) {
  auto session = get(id);
  SessionReport report = session->finalize();
  if (snapshot_dir_) {
    std::filesystem::create_directories(*snapshot_dir_);
    std::ofstream out(*snapshot_dir_ / (id + ".json"), std::ios::binary);
    out << detail::report_to_json(report).dump(2) << '\n';
  }
  return report;
}

}  // namespace agenda_metrics::service
