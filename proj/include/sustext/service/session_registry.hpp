// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sustext/service/analysis.hpp"

namespace sustext::service {

using Clock = std::chrono::steady_clock;

enum class UploadFormat { txt, jsonl };

struct UploadRecord {
  std::string upload_id;
  std::string filename;
  UploadFormat format = UploadFormat::txt;
  std::size_t size_bytes = 0;
  std::size_t documents = 0;
  std::filesystem::path stored_path;
};

enum class AnalysisStatus { idle, running, done, failed };

std::string_view to_string(AnalysisStatus s);

struct Session {
  std::string id;
  std::chrono::system_clock::time_point created_at;
  Clock::time_point last_active;  // guarded by the registry mutex
  std::filesystem::path storage_dir;

  // Serializes upload, analyze and query for this session.
  std::mutex op_mutex;
  std::vector<UploadRecord> uploads;
  std::optional<AnalysisResult> result;
  std::atomic<AnalysisStatus> status{AnalysisStatus::idle};
  std::string last_error;
  bool ended = false;  // set under op_mutex once the session is removed
};

// Random (version 4) UUID in canonical lowercase form.
std::string make_uuid_v4();
bool is_uuid(std::string_view s);

// Thread-safe session table. Every session owns a directory under
// `root`; ending or expiring a session removes it recursively.
class SessionRegistry {
 public:
  SessionRegistry(std::filesystem::path root, std::chrono::seconds ttl,
                  std::function<Clock::time_point()> clock = Clock::now);
  ~SessionRegistry();

  SessionRegistry(const SessionRegistry&) = delete;
  SessionRegistry& operator=(const SessionRegistry&) = delete;

  std::shared_ptr<Session> create();

  // Live session with `id`, refreshing its idle timer; nullptr when the
  // id is unknown or expired (an expired session is cleaned up here).
  std::shared_ptr<Session> find(const std::string& id);

  // Returns false when the id is unknown.
  bool end(const std::string& id);

  // Removes every session idle for longer than the TTL; returns the count.
  std::size_t sweep();

  std::size_t size() const;
  const std::filesystem::path& root() const { return root_; }
  std::chrono::seconds ttl() const { return ttl_; }

 private:
  bool expired(const Session& s, Clock::time_point now) const { return now - s.last_active > ttl_; }
  static void destroy(const std::shared_ptr<Session>& s);

  std::filesystem::path root_;
  std::chrono::seconds ttl_;
  std::function<Clock::time_point()> clock_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace sustext::service
