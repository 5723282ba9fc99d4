// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors
//
// sustext: corpus ingestion, SVM baseline tuning, evaluation, the HTTP
// service and demo-corpus generation.

#include <csignal>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <pthread.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sustext/commands.hpp"
#include "sustext/service/server.hpp"

namespace {

int serve(const std::string& config_path, const std::optional<std::string>& host, const std::optional<int>& port,
          const std::optional<std::string>& corpus) {
  auto config = sustext::service::ServiceConfig::load(config_path);
  if (host) config.host = *host;
  if (port) config.port = *port;
  if (corpus) config.corpus_dir = *corpus;
  config.validate();

  // Route SIGINT/SIGTERM to a waiting thread instead of a handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  sustext::service::Server server(config, sustext::service::load_backend(config));
  const int bound = server.bind();
  spdlog::info("listening on http://{}:{}", config.host, bound);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("shutting down");
    server.stop();
  });
  server.run();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("sustext"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Sustainability passage corpus, classifiers and service"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  sustext::IngestOptions ingest;
  std::string ingest_format;
  std::string labels_path;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a passage corpus from documents");
  ingest_cmd->add_option("--docs", ingest.docs, "Documents (.jsonl, .txt or a directory of .txt)")->required();
  ingest_cmd->add_option("--lexicon", ingest.lexicon, "Keyword lexicon JSON")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--schema", ingest.schema, "Label schema JSON")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest.out, "Output corpus directory")->required();
  ingest_cmd->add_option("--format", ingest_format, "jsonl or txt (default: from --docs)")
      ->check(CLI::IsMember({"jsonl", "txt"}));
  ingest_cmd->add_option("--labels", labels_path, "Gold labels (JSON Lines)")->check(CLI::ExistingFile);
  ingest_cmd->add_option("--split-seed", ingest.split_seed, "Seed of the train/validation/test split")
      ->capture_default_str();

  sustext::TuneCommandOptions tune;
  auto* tune_cmd = app.add_subcommand("tune", "Tune the TF-IDF + SVM baseline");
  tune_cmd->add_option("--corpus", tune.corpus, "Labeled corpus directory")->required()->check(CLI::ExistingDirectory);
  tune_cmd->add_option("--trials", tune.trials, "Trials per seed")->capture_default_str()->check(CLI::PositiveNumber);
  tune_cmd->add_option("--seeds", tune.seeds, "Optimizer seeds")->delimiter(',')->capture_default_str();
  tune_cmd->add_option("--out", tune.out, "Output directory")->required();

  sustext::EvaluateOptions eval;
  std::string eval_out;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions on the test split");
  eval_cmd->add_option("--corpus", eval.corpus, "Labeled corpus directory")->required()->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--pred", eval.pred, "keyword | svm:<model dir> | scores:<csv>")->capture_default_str();
  eval_cmd->add_option("--threshold", eval.threshold, "Sigmoid threshold for score matrices")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--out", eval_out, "Directory for metrics.json and metrics.txt");

  std::string serve_config;
  std::optional<std::string> serve_host;
  std::optional<int> serve_port;
  std::optional<std::string> serve_corpus;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", serve_config, "Service config JSON")->required()->check(CLI::ExistingFile);
  serve_cmd->add_option("--host", serve_host, "Override the bind address");
  serve_cmd->add_option("--port", serve_port, "Override the port (0 picks a free one)");
  serve_cmd->add_option("--corpus", serve_corpus, "Override the backend corpus directory");

  std::uint64_t demo_seed = 7;
  std::string demo_out;
  auto* demo_cmd = app.add_subcommand("gen-demo", "Write a synthetic labeled demo corpus");
  demo_cmd->add_option("--seed", demo_seed, "Generator seed")->capture_default_str();
  demo_cmd->add_option("--out", demo_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    if (*ingest_cmd) {
      if (!ingest_format.empty())
        ingest.format = ingest_format == "txt" ? sustext::DocumentFormat::txt : sustext::DocumentFormat::jsonl;
      if (!labels_path.empty()) ingest.labels = labels_path;
      sustext::run_ingest(ingest);
    } else if (*tune_cmd) {
      const auto summary = sustext::run_tune(tune);
      std::cout << summary.table();
    } else if (*eval_cmd) {
      if (!eval_out.empty()) eval.out = eval_out;
      std::cout << sustext::run_evaluate(eval).to_key_value();
    } else if (*serve_cmd) {
      return serve(serve_config, serve_host, serve_port, serve_corpus);
    } else if (*demo_cmd) {
      sustext::run_gen_demo(demo_seed, demo_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "sustext: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
