#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support/process.hpp"

namespace fs = std::filesystem;
using testing_support::CommandResult;
using testing_support::read_text;
using testing_support::shell_quote;

namespace {

const std::string kFixtures = AGENDA_METRICS_FIXTURES;

CommandResult cli(const std::string& args) {
  return testing_support::run_shell(shell_quote(AGENDA_METRICS_CLI) + " " + args);
}

std::string fixture(const std::string& name) { return shell_quote(kFixtures + "/" + name); }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("agenda_metrics_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("score reproduces the golden CSV") {
  const auto r = cli("score " + fixture("canonical.jsonl"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == read_text(kFixtures + "/canonical.golden.csv"));
  CHECK(r.err.empty());

  const auto dir = scratch("score_out");
  CHECK(cli("score " + fixture("canonical.jsonl") + " --out " + shell_quote((dir / "s.csv").string()))
            .exit_code == 0);
  CHECK(read_text(dir / "s.csv") == r.out);
}

TEST_CASE("score rejects out-of-range hyperparameters with a usage error") {
  const auto beta = cli("score " + fixture("canonical.jsonl") + " --beta 1.5");
  CHECK(beta.exit_code == 2);
  CHECK(beta.err.find("error: beta must be in [0,1]") != std::string::npos);
  CHECK(beta.out.empty());

  const auto gamma = cli("score " + fixture("canonical.jsonl") + " --gamma -0.1");
  CHECK(gamma.exit_code == 2);
  CHECK(gamma.err.find("gamma must be in [0,1]") != std::string::npos);

  CHECK(cli("score " + fixture("canonical.jsonl") + " --nmax 0").exit_code == 2);
  CHECK(cli("score").exit_code == 2);
  CHECK(cli("frobnicate").exit_code == 2);
}

TEST_CASE("a prepared agenda exported from the transcript scores identically") {
  const auto dir = scratch("prepared");
  const auto agenda_path = (dir / "agenda.json").string();
  CHECK(cli("agenda " + fixture("long_offtopic.jsonl") + " --json --out " + shell_quote(agenda_path))
            .exit_code == 0);
  const auto self_built = cli("score " + fixture("long_offtopic.jsonl"));
  const auto prepared = cli("score " + fixture("long_offtopic.jsonl") + " --agenda " + shell_quote(agenda_path));
  CHECK(self_built.exit_code == 0);
  CHECK(prepared.exit_code == 0);
  CHECK(prepared.out == self_built.out);

  const auto touch = cli("score " + fixture("canonical.jsonl") + " --agenda " + fixture("prepared_touch.json"));
  CHECK(touch.exit_code == 0);
  CHECK(touch.out.find("\n1,4,2.000000,1.500000,") != std::string::npos);
}

TEST_CASE("agenda prints the top-k n-grams") {
  const auto top = cli("agenda " + fixture("repeated_touch.jsonl") + " --k 3");
  CHECK(top.exit_code == 0);
  CHECK(top.out.rfind("touch\t2\n", 0) == 0);
  CHECK(line_count(top.out) == 3);

  const auto all = cli("agenda " + fixture("repeated_touch.jsonl") + " --k 10");
  CHECK(line_count(all.out) == 6);
  CHECK(cli("agenda " + fixture("repeated_touch.jsonl") + " --k 0").exit_code == 2);
}

TEST_CASE("rank orders responses by the chosen metric") {
  const auto by_wc = cli("rank " + fixture("long_offtopic.jsonl") + " --by word_count --k 1");
  CHECK(by_wc.exit_code == 0);
  CHECK(by_wc.out.rfind("rank\tt\tword_count\tg\trho\tpi_star\tresponse\n1\t0\t35 (1)", 0) == 0);
  CHECK(line_count(by_wc.out) == 2);

  const auto by_pi = cli("rank " + fixture("long_offtopic.jsonl"));
  CHECK(by_pi.out.find("\n1\t4\t12 (2)") != std::string::npos);
  CHECK(cli("rank " + fixture("long_offtopic.jsonl") + " --by nope").exit_code == 2);
}

TEST_CASE("input errors exit nonzero with an error prefix") {
  const auto stop_only = cli("score " + fixture("stopwords_only.jsonl"));
  CHECK(stop_only.exit_code == 1);
  CHECK(stop_only.err.rfind("error: ", 0) == 0);
  CHECK(stop_only.err.find("empty vocabulary") != std::string::npos);
  CHECK(stop_only.out.empty());

  const auto judge = cli("score " + fixture("judge.jsonl"));
  CHECK(judge.exit_code == 1);
  CHECK(judge.err.rfind("error: ", 0) == 0);
  CHECK(judge.err.find("line 1") != std::string::npos);

  const auto missing = cli("score /nonexistent/t.jsonl");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.rfind("error: ", 0) == 0);

  const auto empty = cli("corpus-stats " + shell_quote(scratch("empty_corpus").string()));
  CHECK(empty.exit_code == 1);
  CHECK(empty.err.rfind("error: ", 0) == 0);
}

TEST_CASE("corpus-stats on identical sessions reports undefined correlations") {
  const auto dir = scratch("identical");
  const std::string transcript = read_text(kFixtures + "/canonical.jsonl");
  for (int i = 0; i < 4; ++i) {
    const std::string id = "c" + std::to_string(i);
    std::ofstream(dir / (id + ".jsonl")) << transcript;
    std::ofstream(dir / (id + ".meta.json")) << R"({"session_id": ")" << id
                                             << R"(", "child_age_years": )" << (5 + i) << "}";
  }
  std::ofstream(dir / "unaged.jsonl") << transcript;

  const auto r = cli("corpus-stats " + shell_quote(dir.string()));
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("note: 1 session(s) without child age") != std::string::npos);
  CHECK(r.err.find("warning: ") != std::string::npos);
  CHECK(r.out.find("age,mean_word_count,var_word_count,n_sessions\n5,2.500000,0.000000,1\n") == 0);
  CHECK(r.out.find("\nmetric,r,n,p_value\nword_count,nan,4,nan\n") != std::string::npos);
}

TEST_CASE("corpus-stats warns when fewer than three sessions carry an age") {
  const auto dir = scratch("few");
  std::ofstream(dir / "a.jsonl") << read_text(kFixtures + "/canonical.jsonl");
  std::ofstream(dir / "a.meta.json") << R"({"child_age_years": 7})";
  const auto r = cli("corpus-stats " + shell_quote(dir.string()));
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("fewer than 3 sessions") != std::string::npos);
  CHECK(r.out == "age,mean_word_count,var_word_count,n_sessions\n7,2.500000,0.000000,1\n");
}

TEST_CASE("generate and corpus-stats are deterministic") {
  const auto root = scratch("generate");
  std::ofstream(root / "cfg.json") << R"({"seed": 7, "n_sessions": 30, "turns_per_session": 20})";
  const auto corpus = root / "corpus";
  CHECK(cli("generate " + shell_quote((root / "cfg.json").string()) + " --out " + shell_quote(corpus.string()))
            .exit_code == 0);
  CHECK(fs::exists(corpus / "syn-00000.jsonl"));
  CHECK(fs::exists(corpus / "syn-00029.meta.json"));

  std::string first;
  for (const char* threads : {"1", "3"}) {
    const auto out = root / (std::string("stats") + threads);
    const auto r = cli("corpus-stats " + shell_quote(corpus.string()) + " --threads " + threads + " --out " +
                       shell_quote(out.string()));
    CHECK(r.exit_code == 0);
    const std::string all = read_text(out / "age_stats.csv") + read_text(out / "score_by_age.csv") +
                            read_text(out / "correlations.csv");
    CHECK(read_text(out / "correlations.csv").rfind("metric,r,n,p_value\nword_count,", 0) == 0);
    if (first.empty()) {
      first = all;
    } else {
      CHECK(all == first);
    }
  }
  const auto turn = cli("corpus-stats " + shell_quote(corpus.string()) + " --turn-level");
  CHECK(turn.exit_code == 0);
  CHECK(turn.out.find("word_count,") != std::string::npos);
  CHECK(turn.out.find(",600,") != std::string::npos);
}

TEST_CASE("stop words can come from a file or the environment") {
  const auto dir = scratch("stopwords");
  const auto custom = (dir / "custom.txt").string();
  std::ofstream(custom) << "# nothing but touch\ntouch\n";

  // With "touch" as a stop word the canonical agenda is {did, he, you, ...}.
  const auto flag = cli("agenda " + fixture("canonical.jsonl") + " --stopwords " + shell_quote(custom));
  CHECK(flag.exit_code == 0);
  CHECK(flag.out.find("touch") == std::string::npos);
  CHECK(flag.out.find("did\t2\n") != std::string::npos);

  const auto env = testing_support::run_shell("AGENDA_METRICS_STOPWORDS=" + shell_quote(custom) + " " +
                                              shell_quote(AGENDA_METRICS_CLI) + " agenda " +
                                              fixture("canonical.jsonl"));
  CHECK(env.exit_code == 0);
  CHECK(env.out == flag.out);

  const auto bad = cli("agenda " + fixture("canonical.jsonl") + " --stopwords /nonexistent/sw.txt");
  CHECK(bad.exit_code != 0);
  CHECK(bad.err.rfind("error: ", 0) == 0);
}
