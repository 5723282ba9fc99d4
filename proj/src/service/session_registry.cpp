// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/service/session_registry.hpp"

#include <array>
#include <random>
#include <system_error>

#include <spdlog/spdlog.h>

#include "sustext/error.hpp"

namespace sustext::service {

std::string_view to_string(AnalysisStatus s) {
  switch (s) {
    case AnalysisStatus::idle: return "idle";
    case AnalysisStatus::running: return "running";
    case AnalysisStatus::done: return "done";
    case AnalysisStatus::failed: return "failed";
  }
  return "idle";
}

std::string make_uuid_v4() {
  static std::mutex mutex;
  static std::mt19937_64 engine = [] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
  }();
  std::array<unsigned char, 16> bytes{};
  {
    std::lock_guard lock(mutex);
    const std::uint64_t hi = engine();
    const std::uint64_t lo = engine();
    for (int i = 0; i < 8; ++i) {
      bytes[i] = static_cast<unsigned char>(hi >> (8 * i));
      bytes[8 + i] = static_cast<unsigned char>(lo >> (8 * i));
    }
  }
  bytes[6] = static_cast<unsigned char>((bytes[6] & 0x0f) | 0x40);
  bytes[8] = static_cast<unsigned char>((bytes[8] & 0x3f) | 0x80);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(36);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i == 4 || i == 6 || i == 8 || i == 10) out += '-';
    out += kHex[bytes[i] >> 4];
    out += kHex[bytes[i] & 0x0f];
  }
  return out;
}

bool is_uuid(std::string_view s) {
  if (s.size() != 36) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (i == 8 || i == 13 || i == 18 || i == 23) {
      if (c != '-') return false;
    } else if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      return false;
    }
  }
  return true;
}

SessionRegistry::SessionRegistry(std::filesystem::path root, std::chrono::seconds ttl,
                                 std::function<Clock::time_point()> clock)
    : root_(std::move(root)), ttl_(ttl), clock_(std::move(clock)) {
  if (ttl_.count() <= 0) throw Error("session TTL must be positive");
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error("cannot create session root " + root_.string() + ": " + ec.message());
}

SessionRegistry::~SessionRegistry() {
  std::lock_guard lock(mutex_);
  for (auto& [id, s] : sessions_) destroy(s);
  sessions_.clear();
}

std::shared_ptr<Session> SessionRegistry::create() {
  auto s = std::make_shared<Session>();
  s->created_at = std::chrono::system_clock::now();
  std::lock_guard lock(mutex_);
  do {
    s->id = make_uuid_v4();
  } while (sessions_.contains(s->id));
  s->storage_dir = root_ / s->id;
  std::error_code ec;
  std::filesystem::create_directories(s->storage_dir, ec);
  if (ec) throw Error("storage unavailable: " + ec.message());
  s->last_active = clock_();
  sessions_.emplace(s->id, s);
  spdlog::debug("session {} created", s->id);
  return s;
}

std::shared_ptr<Session> SessionRegistry::find(const std::string& id) {
  std::shared_ptr<Session> gone;
  {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    const auto now = clock_();
    if (!expired(*it->second, now)) {
      it->second->last_active = now;
      return it->second;
    }
    gone = it->second;
    sessions_.erase(it);
  }
  spdlog::info("session {} expired", id);
  destroy(gone);
  return nullptr;
}

bool SessionRegistry::end(const std::string& id) {
  std::shared_ptr<Session> gone;
  {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return false;
    gone = it->second;
    sessions_.erase(it);
  }
  destroy(gone);
  return true;
}

std::size_t SessionRegistry::sweep() {
  std::vector<std::shared_ptr<Session>> gone;
  {
    std::lock_guard lock(mutex_);
    const auto now = clock_();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      if (expired(*it->second, now)) {
        gone.push_back(it->second);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (const auto& s : gone) {
    spdlog::info("session {} expired", s->id);
    destroy(s);
  }
  return gone.size();
}

std::size_t SessionRegistry::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

// Waits for any in-flight operation on the session, then deletes its files.
void SessionRegistry::destroy(const std::shared_ptr<Session>& s) {
  std::lock_guard lock(s->op_mutex);
  s->ended = true;
  s->uploads.clear();
  s->result.reset();
  std::error_code ec;
  std::filesystem::remove_all(s->storage_dir, ec);
  if (ec) spdlog::warn("could not remove {}: {}", s->storage_dir.string(), ec.message());
}

}  // namespace sustext::service
