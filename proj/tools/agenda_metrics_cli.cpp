// agenda-metrics: score interview transcripts by agenda alignment and
// responsiveness, aggregate corpora by child age, or serve live sessions.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "agenda_metrics/agenda.hpp"
#include "agenda_metrics/corpus.hpp"
#include "agenda_metrics/error.hpp"
#include "agenda_metrics/report_io.hpp"
#include "agenda_metrics/scoring.hpp"
#include "agenda_metrics/service.hpp"
#include "agenda_metrics/synthetic.hpp"
#include "agenda_metrics/transcript.hpp"

namespace am = agenda_metrics;
namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  double gamma = 0.5;
  double beta = 0.5;
  int nmax = 3;
  std::string stopwords;
  std::string agenda;
  std::size_t k = 10;
  std::string out;
};

void add_text_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--nmax", f.nmax, "Longest n-gram length")->capture_default_str();
  cmd->add_option("--stopwords", f.stopwords,
                  "Stop-word file (default: $AGENDA_METRICS_STOPWORDS or built-in list)");
}

void add_score_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--gamma", f.gamma, "Rolling agenda discount in [0,1]")->capture_default_str();
  cmd->add_option("--beta", f.beta, "Responsiveness weight in [0,1]")->capture_default_str();
  add_text_flags(cmd, f);
}

void validate(const CommonFlags& f) {
  if (!(f.gamma >= 0.0 && f.gamma <= 1.0)) throw UsageError("gamma must be in [0,1]");
  if (!(f.beta >= 0.0 && f.beta <= 1.0)) throw UsageError("beta must be in [0,1]");
  if (f.nmax < 1) throw UsageError("nmax must be >= 1");
  if (f.k < 1) throw UsageError("k must be >= 1");
}

am::TextConfig text_config(const CommonFlags& f) {
  am::TextConfig text;
  text.n_max = f.nmax;
  std::string path = f.stopwords;
  if (path.empty()) {
    if (const char* env = std::getenv("AGENDA_METRICS_STOPWORDS"); env && *env) path = env;
  }
  if (!path.empty()) text.stopwords = std::make_shared<const am::StopWords>(am::StopWords::load(path));
  return text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw am::ValidationError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

am::Interview load(const std::string& path, const std::string& meta) {
  try {
    return am::load_interview(path, meta.empty() ? std::nullopt : std::optional<fs::path>(meta));
  } catch (const am::Error& e) {
    throw am::ValidationError(path + ": " + e.what());
  }
}

/// Writes to --out when given, stdout otherwise.
template <typename Writer>
void emit(const std::string& out_path, Writer write) {
  if (out_path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw am::ValidationError("cannot write " + out_path);
  write(out);
}

std::string format_p(double p) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p, std::chars_format::scientific, 6);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(p);
}

int cmd_score(const CommonFlags& f, const std::string& transcript, const std::string& meta,
              bool series) {
  validate(f);
  const am::TextConfig text = text_config(f);
  const am::Interview interview = load(transcript, meta);
  std::optional<am::PreparedAgenda> prepared;
  if (!f.agenda.empty()) {
    try {
      prepared = am::parse_prepared_agenda(read_file(f.agenda), text.stopwords);
    } catch (const am::Error& e) {
      throw am::ValidationError(f.agenda + ": " + e.what());
    }
  }
  const am::SessionReport report =
      am::score_session(interview, {f.gamma, f.beta}, text, prepared ? &*prepared : nullptr, f.k);
  emit(f.out, [&](std::ostream& os) {
    if (series) {
      am::write_series_csv(os, report);
    } else {
      am::write_score_csv(os, report);
    }
  });
  return 0;
}

int cmd_agenda(const CommonFlags& f, const std::string& transcript, bool as_json) {
  validate(f);
  const am::TextConfig text = text_config(f);
  const am::Interview interview = load(transcript, {});
  const auto questions = interview.questions();
  const am::Vocabulary vocab = am::build_vocabulary(questions, text.n_max, text.stopwords);
  const am::TermVector agenda = am::build_agenda(vocab, questions);
  emit(f.out, [&](std::ostream& os) {
    if (as_json) {
      os << am::serialize_prepared_agenda(vocab, agenda);
    } else {
      am::write_top_k_tsv(os, am::top_k_agenda(agenda, vocab, f.k));
    }
  });
  return 0;
}

int cmd_rank(const CommonFlags& f, const std::string& transcript, const std::string& by_name) {
  validate(f);
  const auto by = am::parse_metric(by_name);
  if (!by || *by == am::Metric::rho_norm) {
    throw UsageError("--by must be one of word_count, g, rho, pi_star");
  }
  const am::TextConfig text = text_config(f);
  const am::Interview interview = load(transcript, {});
  const am::SessionReport report = am::score_session(interview, {f.gamma, f.beta}, text);

  auto rank_of = [&](const am::ScoreRecord& r) {
    switch (*by) {
      case am::Metric::word_count: return r.rank_wc;
      case am::Metric::g: return r.rank_g;
      case am::Metric::rho: return r.rank_rho;
      default: return r.rank_pi;
    }
  };
  std::vector<am::ScoreRecord> rows = report.records;
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    return rank_of(a) < rank_of(b);
  });
  if (rows.size() > f.k) rows.resize(f.k);

  emit(f.out, [&](std::ostream& os) {
    os << "rank\tt\tword_count\tg\trho\tpi_star\tresponse\n";
    for (const auto& r : rows) {
      std::string excerpt = interview.pairs[r.t].response;
      for (char& c : excerpt) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
      }
      os << rank_of(r) << '\t' << r.t << '\t' << r.word_count << " (" << r.rank_wc << ")\t"
         << am::format_fixed(r.g, 2) << " (" << r.rank_g << ")\t" << am::format_fixed(r.rho, 2)
         << " (" << r.rank_rho << ")\t" << am::format_fixed(r.pi_star, 2) << " (" << r.rank_pi
         << ")\t" << excerpt << '\n';
    }
  });
  return 0;
}

void write_age_stats(std::ostream& os, const std::map<int, am::AgeGroupStats>& stats) {
  os << "age,mean_word_count,var_word_count,n_sessions\n";
  for (const auto& [age, s] : stats) {
    os << age << ',' << am::format_fixed(s.mean) << ',' << am::format_fixed(s.variance) << ','
       << s.count << '\n';
  }
}

void write_score_by_age(std::ostream& os, std::span<const am::SessionAggregate> aggregates) {
  os << "age,metric,mean,variance,n_sessions\n";
  for (am::Metric m : am::kAllMetrics) {
    for (const auto& [age, s] : am::metric_by_age(aggregates, m)) {
      os << age << ',' << am::to_string(m) << ',' << am::format_fixed(s.mean) << ','
         << am::format_fixed(s.variance) << ',' << s.count << '\n';
    }
  }
}

void write_correlations(std::ostream& os, const std::vector<am::CorrelationRow>& rows) {
  os << "metric,r,n,p_value\n";
  for (const auto& row : rows) {
    os << row.result.metric << ',';
    if (row.error) {
      os << "nan," << row.result.n << ",nan\n";
    } else {
      os << am::format_fixed(row.result.r) << ',' << row.result.n << ','
         << format_p(row.result.p_value) << '\n';
    }
  }
}

int cmd_corpus_stats(const CommonFlags& f, const std::string& dir, int threads, bool turn_level) {
  validate(f);
  const am::TextConfig text = text_config(f);
  const auto sessions = am::load_corpus_dir(dir);
  const auto reports = am::score_corpus(sessions, {f.gamma, f.beta}, text, threads);

  std::vector<am::SessionAggregate> aggregates;
  std::size_t unaged = 0;
  for (const auto& r : reports) {
    aggregates.push_back(am::aggregate_session(r, r.child_age_years));
    if (!r.child_age_years) ++unaged;
  }
  const std::size_t aged = reports.size() - unaged;
  if (unaged > 0) {
    std::cerr << "note: " << unaged << " session(s) without child age excluded from age analytics\n";
  }

  std::optional<std::vector<am::CorrelationRow>> correlations;
  if (aged >= 3) {
    correlations = am::correlate_with_age(
        reports, turn_level ? am::CorrelationUnit::turn : am::CorrelationUnit::session);
    for (const auto& row : *correlations) {
      if (row.error) std::cerr << "warning: " << *row.error << '\n';
    }
  } else {
    std::cerr << "warning: fewer than 3 sessions with child age; correlation omitted\n";
  }

  const auto stats = am::expressiveness_by_age(aggregates);
  if (f.out.empty()) {
    write_age_stats(std::cout, stats);
    if (correlations) {
      std::cout << '\n';
      write_correlations(std::cout, *correlations);
    }
    return 0;
  }
  fs::create_directories(f.out);
  emit((fs::path(f.out) / "age_stats.csv").string(), [&](std::ostream& os) { write_age_stats(os, stats); });
  emit((fs::path(f.out) / "score_by_age.csv").string(),
       [&](std::ostream& os) { write_score_by_age(os, aggregates); });
  if (correlations) {
    emit((fs::path(f.out) / "correlations.csv").string(),
         [&](std::ostream& os) { write_correlations(os, *correlations); });
  }
  return 0;
}

int cmd_generate(const std::string& config_path, const std::string& out_dir) {
  const am::SyntheticConfig cfg = am::parse_synthetic_config(read_file(config_path));
  am::write_corpus(out_dir, am::generate_corpus(cfg));
  return 0;
}

int cmd_serve(const CommonFlags& f, const std::string& listen, const std::string& snapshot_dir,
              const std::string& static_dir) {
  validate(f);
  const auto colon = listen.rfind(':');
  int port = 0;
  if (colon == std::string::npos ||
      std::from_chars(listen.data() + colon + 1, listen.data() + listen.size(), port).ec !=
          std::errc{} ||
      port <= 0 || port > 65535) {
    throw UsageError("--listen must be HOST:PORT");
  }
  const std::string host = listen.substr(0, colon);

  am::service::SessionStore store(
      text_config(f), snapshot_dir.empty() ? std::nullopt : std::optional<fs::path>(snapshot_dir));
  httplib::Server server;
  am::service::register_routes(server, store);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    throw UsageError("--static directory does not exist: " + static_dir);
  }
  std::cerr << "listening on " << host << ':' << port << '\n';
  if (!server.listen(host, port)) throw am::ValidationError("cannot listen on " + listen);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agenda productivity and responsiveness scoring for interview transcripts"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string transcript, meta, dir, by = "pi_star", listen = "127.0.0.1:8377";
  std::string snapshot_dir, static_dir, config_path;
  bool series = false, as_json = false, turn_level = false;
  int threads = 0;

  auto* score = app.add_subcommand("score", "Per-turn scores of one transcript as CSV");
  score->add_option("transcript", transcript, "Transcript JSONL")->required();
  score->add_option("--meta", meta, "Session metadata JSON (default: <stem>.meta.json)");
  add_score_flags(score, flags);
  score->add_option("--agenda", flags.agenda, "Prepared agenda JSON");
  score->add_option("--out", flags.out, "Output file (default stdout)");
  score->add_flag("--series", series, "Emit max-normalized series instead of raw scores");

  auto* agenda = app.add_subcommand("agenda", "Top-k weighted agenda n-grams as TSV");
  agenda->add_option("transcript", transcript, "Transcript JSONL")->required();
  add_text_flags(agenda, flags);
  agenda->add_option("--k", flags.k, "Number of entries")->capture_default_str();
  agenda->add_option("--out", flags.out, "Output file (default stdout)");
  agenda->add_flag("--json", as_json, "Emit the full agenda as prepared-agenda JSON");

  auto* rank = app.add_subcommand("rank", "Responses ordered by one metric's rank");
  rank->add_option("transcript", transcript, "Transcript JSONL")->required();
  add_score_flags(rank, flags);
  rank->add_option("--by", by, "word_count, g, rho or pi_star")->capture_default_str();
  rank->add_option("--k", flags.k, "Number of rows")->capture_default_str();
  rank->add_option("--out", flags.out, "Output file (default stdout)");

  auto* corpus = app.add_subcommand("corpus-stats", "Age analytics over a transcript directory");
  corpus->add_option("dir", dir, "Directory of *.jsonl transcripts with .meta.json sidecars")
      ->required();
  add_score_flags(corpus, flags);
  corpus->add_option("--out", flags.out, "Output directory (default: stdout)");
  corpus->add_option("--threads", threads, "Scoring threads (0 = OpenMP default)");
  corpus->add_flag("--turn-level", turn_level, "Correlate per turn instead of per session mean");

  auto* generate = app.add_subcommand("generate", "Write a synthetic corpus");
  generate->add_option("config", config_path, "Generator config JSON")->required();
  generate->add_option("--out", flags.out, "Output directory")->required();

  auto* serve = app.add_subcommand("serve", "Run the live-session HTTP service");
  add_text_flags(serve, flags);
  serve->add_option("--listen", listen, "HOST:PORT")->capture_default_str();
  serve->add_option("--snapshot-dir", snapshot_dir, "Write finalized sessions here as JSON");
  serve->add_option("--static", static_dir, "Serve UI files from this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*score) return cmd_score(flags, transcript, meta, series);
    if (*agenda) return cmd_agenda(flags, transcript, as_json);
    if (*rank) return cmd_rank(flags, transcript, by);
    if (*corpus) return cmd_corpus_stats(flags, dir, threads, turn_level);
    if (*generate) return cmd_generate(config_path, flags.out);
    if (*serve) return cmd_serve(flags, listen, snapshot_dir, static_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
