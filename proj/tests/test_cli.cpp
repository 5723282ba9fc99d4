// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/temp_dir.hpp"
#include "sustext/io.hpp"

using sustext::testing::TempDir;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stderr_text;
};

RunResult run_cli(const std::string& args, const TempDir& dir) {
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string(SUSTEXT_CLI_PATH) + " " + args + " >/dev/null 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.stderr_text = sustext::read_file(err);
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, HelpAndUnknownSubcommand) {
  TempDir dir("cli");
  EXPECT_EQ(run_cli("--help", dir).exit_code, 0);
  EXPECT_NE(run_cli("frobnicate", dir).exit_code, 0);
}

TEST(Cli, GenDemoIngestEvaluate) {
  TempDir dir("cli");
  ASSERT_EQ(run_cli("gen-demo --seed 3 --out " + q(dir / "demo"), dir).exit_code, 0);
  const auto r = run_cli("ingest --docs " + q(dir / "demo/documents.jsonl") + " --lexicon " +
                             q(dir / "demo/lexicon.json") + " --schema " + q(dir / "demo/schema.json") +
                             " --labels " + q(dir / "demo/labels.jsonl") + " --out " + q(dir / "corpus"),
                         dir);
  ASSERT_EQ(r.exit_code, 0) << r.stderr_text;
  for (const char* f : {"passages.jsonl", "split.json", "schema.json", "lexicon.json", "ingest_report.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / "corpus" / f)) << f;

  ASSERT_EQ(run_cli("evaluate --corpus " + q(dir / "corpus") + " --out " + q(dir / "eval"), dir).exit_code, 0);
  const auto metrics = sustext::read_json_file(dir / "eval/metrics.json");
  EXPECT_DOUBLE_EQ(metrics["weighted"]["f1"].get<double>(), 1.0);
}

TEST(Cli, IngestRejectsLexiconWithUnknownClass) {
  TempDir dir("cli");
  ASSERT_EQ(run_cli("gen-demo --out " + q(dir / "demo"), dir).exit_code, 0);
  auto lex = sustext::read_json_file(dir / "demo/lexicon.json");
  lex["issues"]["42"] = nlohmann::json::array({"moonlight"});
  sustext::write_file(dir / "bad_lexicon.json", lex.dump());
  const auto r = run_cli("ingest --docs " + q(dir / "demo/documents.jsonl") + " --lexicon " +
                             q(dir / "bad_lexicon.json") + " --schema " + q(dir / "demo/schema.json") +
                             " --out " + q(dir / "corpus"),
                         dir);
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.stderr_text.find("42"), std::string::npos) << r.stderr_text;
  EXPECT_FALSE(std::filesystem::exists(dir / "corpus/passages.jsonl"));
}

TEST(Cli, MissingInputsFailWithDiagnostic) {
  TempDir dir("cli");
  auto r = run_cli("ingest --docs " + q(dir / "nope.jsonl") + " --lexicon x --schema y --out " + q(dir / "o"), dir);
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.stderr_text.find("does not exist"), std::string::npos) << r.stderr_text;
  r = run_cli("evaluate --corpus " + q(dir / "missing"), dir);
  EXPECT_NE(r.exit_code, 0);
  r = run_cli("tune --corpus " + q(dir / "missing") + " --out " + q(dir / "t"), dir);
  EXPECT_NE(r.exit_code, 0);
}

TEST(Cli, ServeRefusesInvalidCorpus) {
  TempDir dir("cli");
  std::filesystem::create_directories(dir / "corpus");
  sustext::write_file(dir / "corpus/passages.jsonl", "{broken\n");
  const auto r = run_cli("serve --corpus " + q(dir / "corpus") + " --port 0", dir);
  EXPECT_NE(r.exit_code, 0);
  EXPECT_FALSE(r.stderr_text.empty());
}
