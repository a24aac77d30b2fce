#include <charconv>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "agenda_metrics/error.hpp"
#include "agenda_metrics/report_io.hpp"
#include "agenda_metrics/service.hpp"
#include "report_json.hpp"

namespace agenda_metrics::service {

using nlohmann::json;

namespace detail {

json record_to_json(const ScoreRecord& r, bool with_ranks) {
  json out = {{"t", r.t},     {"word_count", r.word_count}, {"g", r.g},
              {"rho", r.rho}, {"rho_norm", r.rho_norm},     {"pi_star", r.pi_star}};
  if (with_ranks) {
    out["rank_wc"] = r.rank_wc;
    out["rank_g"] = r.rank_g;
    out["rank_rho"] = r.rank_rho;
    out["rank_pi"] = r.rank_pi;
  }
  return out;
}

json live_record_to_json(const LiveRecord& r) {
  json out = record_to_json(r.record, false);
  out["revision"] = r.revision;
  return out;
}

json weighted_to_json(const std::vector<WeightedNGram>& entries) {
  json out = json::array();
  for (const auto& e : entries) out.push_back({{"ngram", e.ngram}, {"weight", e.weight}});
  return out;
}

json report_to_json(const SessionReport& report) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(record_to_json(r, true));
  const auto& s = report.normalized_series;
  return {{"session_id", report.session_id},
          {"hyperparams", {{"gamma", report.params.gamma}, {"beta", report.params.beta}}},
          {"records", std::move(records)},
          {"agenda_top_k", weighted_to_json(report.agenda_top_k)},
          {"normalized_series",
           {{"word_count", s.word_count},
            {"g", s.g},
            {"rho", s.rho},
            {"rho_norm", s.rho_norm},
            {"pi_star", s.pi_star}}},
          {"csv", score_csv(report)}};
}

}  // namespace detail

namespace {

class BadRequest : public Error {
 public:
  using Error::Error;
};

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    json body = json::parse(req.body);
    if (!body.is_object()) throw BadRequest("request body must be a JSON object");
    return body;
  } catch (const json::parse_error& e) {
    throw BadRequest(std::string("malformed JSON body: ") + e.what());
  }
}

Hyperparams parse_hyperparams(const json& body) {
  Hyperparams params;
  auto it = body.find("hyperparams");
  if (it == body.end() || it->is_null()) return params;
  if (!it->is_object()) throw BadRequest("hyperparams: must be an object");
  for (auto [key, dst] : {std::pair{"gamma", &params.gamma}, std::pair{"beta", &params.beta}}) {
    auto f = it->find(key);
    if (f == it->end()) continue;
    if (!f->is_number()) throw BadRequest(std::string("hyperparams.") + key + ": must be a number");
    *dst = f->get<double>();
  }
  try {
    params.validate();
  } catch (const ValidationError& e) {
    throw BadRequest(std::string("hyperparams: ") + e.what());
  }
  return params;
}

std::uint64_t query_uint(const httplib::Request& req, const char* name, std::uint64_t fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string value = req.get_param_value(name);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw BadRequest(std::string("query parameter \"") + name + "\" must be a non-negative integer");
  }
  return out;
}

template <typename Handler>
auto guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const BadRequest& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const NotFound& e) {
      reply(res, 404, {{"error", e.what()}});
    } catch (const Conflict& e) {
      reply(res, 409, {{"error", e.what()}});
    } catch (const ValidationError& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", e.what()}});
    }
  };
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
  server.Post("/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const Hyperparams params = parse_hyperparams(body);
    std::optional<PreparedAgenda> prepared;
    if (auto it = body.find("agenda"); it != body.end() && !it->is_null()) {
      try {
        prepared = parse_prepared_agenda(it->dump(), store.text().stopwords);
      } catch (const ValidationError& e) {
        throw BadRequest(e.what());
      }
    }
    auto session = store.create(params, std::move(prepared));
    reply(res, 201,
          {{"session_id", session->id()},
           {"revision", 0},
           {"mode", to_string(session->mode())},
           {"hyperparams", {{"gamma", params.gamma}, {"beta", params.beta}}}});
  }));

  server.Post("/sessions/:id/turns",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
    auto session = store.get(req.path_params.at("id"));
    const json body = parse_body(req);
    auto sp = body.find("speaker");
    auto tx = body.find("text");
    if (sp == body.end() || !sp->is_string()) throw BadRequest("speaker: must be a string");
    if (tx == body.end() || !tx->is_string()) throw BadRequest("text: must be a string");
    auto speaker = parse_speaker(sp->get<std::string>());
    if (!speaker) throw BadRequest("speaker: unknown speaker \"" + sp->get<std::string>() + "\"");

    AppendResult result = session->append_turn(*speaker, tx->get<std::string>());
    json out = {{"revision", result.revision}};
    if (result.latest) {
      out["latest_scores"] = detail::live_record_to_json({result.revision, *result.latest});
    }
    reply(res, 200, out);
  }));

  server.Get("/sessions/:id/scores",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
    auto session = store.get(req.path_params.at("id"));
    const ScoresView view = session->scores_since(query_uint(req, "since", 0));
    json records = json::array();
    for (const auto& r : view.records) records.push_back(detail::live_record_to_json(r));
    reply(res, 200, {{"revision", view.revision}, {"records", std::move(records)}});
  }));

  server.Get("/sessions/:id/agenda",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
    auto session = store.get(req.path_params.at("id"));
    const auto k = query_uint(req, "k", 10);
    if (k < 1) throw BadRequest("query parameter \"k\" must be >= 1");
    const AgendaView view = session->agenda_view(static_cast<std::size_t>(k));
    reply(res, 200,
          {{"top_k", detail::weighted_to_json(view.top_k)},
           {"rolling_top_k", detail::weighted_to_json(view.rolling_top_k)},
           {"coverage", view.coverage}});
  }));

  server.Post("/sessions/:id/finalize",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
    reply(res, 200, detail::report_to_json(store.finalize(req.path_params.at("id"))));
  }));
}

}  // namespace agenda_metrics::service
