// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "sustext/service/analysis.hpp"
#include "sustext/service/session_registry.hpp"

namespace httplib {
class Server;
}

namespace sustext::service {

enum class ClassifierKind { keyword, svm, scores };

// JSON service configuration:
//   {"corpus_dir": "...", "classifier": "keyword" | "svm" | "scores",
//    "model_dir": "...", "scores_path": "...", "threshold": 0.33,
//    "host": "127.0.0.1", "port": 8080, "session_root": "...",
//    "session_ttl_seconds": 1800, "max_upload_bytes": 10485760,
//    "static_dir": "..."}
// Relative paths resolve against the config file's directory.
struct ServiceConfig {
  std::filesystem::path corpus_dir;
  ClassifierKind classifier = ClassifierKind::keyword;
  std::filesystem::path model_dir;
  std::filesystem::path scores_path;
  double threshold = 0.33;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path session_root = "sessions";
  std::chrono::seconds session_ttl{1800};
  std::chrono::seconds sweep_interval{60};
  std::size_t max_upload_bytes = 10 * 1024 * 1024;
  std::optional<std::filesystem::path> static_dir;

  static ServiceConfig load(const std::filesystem::path& path);
  void validate() const;
};

// Loads the corpus directory and the configured classifier. Throws when
// the corpus fails validation.
Backend load_backend(const ServiceConfig& config);

inline constexpr std::string_view kCannotProcessMessage = "The file cannot be processed";

// HTTP front end:
//   GET    /api/health
//   GET    /api/schema
//   POST   /api/session
//   POST   /api/session/{id}/upload     multipart field "file"
//   POST   /api/session/{id}/analyze    {"use_uploads": bool, "use_backend": bool}
//   GET    /api/session/{id}/status
//   GET    /api/session/{id}/results    ?class=&q=&page=&page_size=
//   DELETE /api/session/{id}
// Errors are {"error": message} with a conventional status code.
class Server {
 public:
  Server(ServiceConfig config, Backend backend);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to config.port, or to a free port when it is 0; returns the port.
  int bind();
  // Serves until stop(); also runs the expiry sweeper.
  void run();
  void stop();

  SessionRegistry& sessions() { return *registry_; }
  const Backend& backend() const { return backend_; }

 private:
  void install_routes();
  void sweeper_loop();

  ServiceConfig config_;
  Backend backend_;
  std::unique_ptr<SessionRegistry> registry_;
  std::unique_ptr<httplib::Server> http_;
  std::mutex sweep_mutex_;
  std::condition_variable sweep_cv_;
  bool stopping_ = false;
  std::thread sweeper_;
};

}  // namespace sustext::service
