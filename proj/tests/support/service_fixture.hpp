// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <memory>
#include <string>
#include <thread>

#include <httplib.h>

#include "support/temp_dir.hpp"
#include "sustext/commands.hpp"
#include "sustext/service/server.hpp"

namespace sustext::testing {

// Demo corpus on disk plus a running in-process server on a free port.
class LiveService {
 public:
  explicit LiveService(std::uint64_t demo_seed = 7) : dir_("svc") {
    run_gen_demo(demo_seed, dir_ / "demo");
    IngestOptions in;
    in.docs = dir_ / "demo/documents.jsonl";
    in.lexicon = dir_ / "demo/lexicon.json";
    in.schema = dir_ / "demo/schema.json";
    in.labels = dir_ / "demo/labels.jsonl";
    in.out = dir_ / "corpus";
    run_ingest(in);

    config_.corpus_dir = dir_ / "corpus";
    config_.session_root = dir_ / "sessions";
    config_.port = 0;
    server_ = std::make_unique<service::Server>(config_, service::load_backend(config_));
    port_ = server_->bind();
    thread_ = std::thread([this] { server_->run(); });
  }

  ~LiveService() {
    server_->stop();
    thread_.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

  service::Server& server() { return *server_; }
  const std::filesystem::path& root() const { return dir_.path(); }
  int port() const { return port_; }

 private:
  TempDir dir_;
  service::ServiceConfig config_;
  std::unique_ptr<service::Server> server_;
  int port_ = 0;
  std::thread thread_;
};

inline httplib::Result upload(httplib::Client& c, const std::string& session, const std::string& filename,
                              const std::string& content, const std::string& type = "text/plain") {
  httplib::MultipartFormDataItems items = {{"file", content, filename, type}};
  return c.Post("/api/session/" + session + "/upload", items);
}

}  // namespace sustext::testing
