// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/service/server.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "sustext/error.hpp"
#include "sustext/io.hpp"
#include "sustext/model_io.hpp"
#include "sustext/text.hpp"

namespace sustext::service {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

ClassifierKind parse_classifier(const std::string& s) {
  if (s == "keyword") return ClassifierKind::keyword;
  if (s == "svm") return ClassifierKind::svm;
  if (s == "scores") return ClassifierKind::scores;
  throw Error("unknown classifier '" + s + "' (expected keyword, svm or scores)");
}

}  // namespace

ServiceConfig ServiceConfig::load(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  if (!j.is_object()) throw Error(path.string() + ": expected a JSON object");
  const auto base = path.parent_path();
  ServiceConfig c;
  try {
    c.corpus_dir = resolve(base, j.at("corpus_dir").get<std::string>());
    if (j.contains("classifier")) c.classifier = parse_classifier(j["classifier"].get<std::string>());
    if (j.contains("model_dir")) c.model_dir = resolve(base, j["model_dir"].get<std::string>());
    if (j.contains("scores_path")) c.scores_path = resolve(base, j["scores_path"].get<std::string>());
    if (j.contains("threshold")) c.threshold = j["threshold"].get<double>();
    if (j.contains("host")) c.host = j["host"].get<std::string>();
    if (j.contains("port")) c.port = j["port"].get<int>();
    if (j.contains("session_root")) c.session_root = resolve(base, j["session_root"].get<std::string>());
    else c.session_root = base / c.session_root;
    if (j.contains("session_ttl_seconds")) c.session_ttl = std::chrono::seconds(j["session_ttl_seconds"].get<long>());
    if (j.contains("sweep_interval_seconds"))
      c.sweep_interval = std::chrono::seconds(j["sweep_interval_seconds"].get<long>());
    if (j.contains("max_upload_bytes")) c.max_upload_bytes = j["max_upload_bytes"].get<std::size_t>();
    if (j.contains("static_dir")) c.static_dir = resolve(base, j["static_dir"].get<std::string>());
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
  c.validate();
  return c;
}

void ServiceConfig::validate() const {
  if (corpus_dir.empty()) throw Error("config: corpus_dir is required");
  if (classifier == ClassifierKind::svm && model_dir.empty()) throw Error("config: classifier svm needs model_dir");
  if (classifier == ClassifierKind::scores && scores_path.empty())
    throw Error("config: classifier scores needs scores_path");
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error("config: threshold must be in (0, 1)");
  if (port < 0 || port > 65535) throw Error("config: port out of range");
  if (session_ttl.count() <= 0) throw Error("config: session_ttl_seconds must be positive");
  if (sweep_interval.count() <= 0) throw Error("config: sweep_interval_seconds must be positive");
  if (max_upload_bytes == 0) throw Error("config: max_upload_bytes must be positive");
}

Backend load_backend(const ServiceConfig& config) {
  const CorpusDirectory corpus = CorpusDirectory::load(config.corpus_dir);
  switch (config.classifier) {
    case ClassifierKind::keyword:
      return build_backend(corpus, std::make_shared<KeywordClassifier>(corpus.lexicon));
    case ClassifierKind::svm:
      return build_backend(corpus, std::make_shared<SvmClassifier>(load_pipeline(config.model_dir)));
    case ClassifierKind::scores:
      return build_backend(corpus, import_scores(config.scores_path, corpus.schema.size()), config.threshold,
                           std::make_shared<KeywordClassifier>(corpus.lexicon));
  }
  throw Error("unknown classifier");
}

namespace {

struct HttpError {
  int status;
  std::string message;
};

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view message) {
  send_json(res, status, json{{"error", message}});
}

std::string lower_extension(const std::string& filename) {
  return text::ascii_lower(std::filesystem::path(filename).extension().string());
}

// Keeps the base name and replaces anything outside [A-Za-z0-9._-].
std::string safe_filename(const std::string& filename) {
  std::string base = std::filesystem::path(filename).filename().string();
  for (char& c : base) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '-' || c == '_';
    if (!ok) c = '_';
  }
  if (base.empty() || base == "." || base == "..") base = "upload";
  return base;
}

std::string cannot_process(std::string_view why) {
  return std::string(kCannotProcessMessage) + ": " + std::string(why);
}

// Parses an uploaded file into documents; throws HttpError(400).
std::vector<Document> parse_upload(const UploadRecord& record, std::string_view content) {
  if (record.format == UploadFormat::txt) {
    Document d;
    d.id = "upload-" + record.upload_id;
    d.title = record.filename;
    d.source_type = SourceType::upload;
    d.filename = record.filename;
    d.text = std::string(content);
    return {std::move(d)};
  }
  std::vector<Document> docs;
  try {
    std::istringstream in{std::string(content)};
    docs = read_documents_jsonl(in, record.filename);
  } catch (const std::exception& e) {
    throw HttpError{400, cannot_process(e.what())};
  }
  for (auto& d : docs) {
    d.id = "upload-" + record.upload_id + "/" + d.id;
    if (d.source_type == SourceType::upload && !d.filename) d.filename = record.filename;
  }
  return docs;
}

void check_text_payload(const std::string& filename, std::string_view content) {
  const std::string ext = lower_extension(filename);
  if (ext == ".pdf" || content.substr(0, 5) == "%PDF-")
    throw HttpError{400, cannot_process("PDF documents are not supported; upload .txt or .jsonl files")};
  if (ext != ".txt" && ext != ".jsonl")
    throw HttpError{400, cannot_process("only .txt and .jsonl files are accepted")};
  if (content.find('\0') != std::string_view::npos || !text::is_valid_utf8(content))
    throw HttpError{400, cannot_process("the content is not UTF-8 text")};
}

bool parse_size(const std::string& s, std::size_t& out) {
  if (s.empty()) return false;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

json page_to_json(const ResultPage& page, const std::string& session_id) {
  json dist = json::object();
  for (const auto& [c, n] : page.distribution) dist[std::to_string(c)] = n;
  json passages = json::array();
  for (const auto& row : page.rows) {
    const ResultPassage& p = *row.passage;
    json spans = json::array();
    for (const auto& [s, e] : row.spans) spans.push_back({s, e});
    passages.push_back({{"passage_id", p.passage_id},
                        {"text", p.text},
                        {"class_ids", p.class_ids},
                        {"source_link", p.source_link},
                        {"origin", to_string(p.origin)},
                        {"match_spans", std::move(spans)}});
  }
  json out = {{"session_id", session_id},
              {"distribution", std::move(dist)},
              {"passages", std::move(passages)},
              {"total", page.total},
              {"page", page.page},
              {"page_size", page.page_size}};
  if (page.message) out["message"] = *page.message;
  return out;
}

}  // namespace

Server::Server(ServiceConfig config, Backend backend)
    : config_(std::move(config)),
      backend_(std::move(backend)),
      registry_(std::make_unique<SessionRegistry>(config_.session_root, config_.session_ttl)),
      http_(std::make_unique<httplib::Server>()) {
  config_.validate();
  install_routes();
}

Server::~Server() {
  stop();
  if (sweeper_.joinable()) sweeper_.join();
}

int Server::bind() {
  if (config_.port == 0) {
    const int port = http_->bind_to_any_port(config_.host);
    if (port < 0) throw Error("cannot bind to " + config_.host);
    return port;
  }
  if (!http_->bind_to_port(config_.host, config_.port))
    throw Error("cannot bind to " + config_.host + ":" + std::to_string(config_.port));
  return config_.port;
}

void Server::run() {
  {
    std::lock_guard lock(sweep_mutex_);
    stopping_ = false;
  }
  sweeper_ = std::thread([this] { sweeper_loop(); });
  http_->listen_after_bind();
  {
    std::lock_guard lock(sweep_mutex_);
    stopping_ = true;
  }
  sweep_cv_.notify_all();
  sweeper_.join();
}

void Server::stop() {
  {
    std::lock_guard lock(sweep_mutex_);
    stopping_ = true;
  }
  sweep_cv_.notify_all();
  http_->stop();
}

void Server::sweeper_loop() {
  std::unique_lock lock(sweep_mutex_);
  while (!stopping_) {
    sweep_cv_.wait_for(lock, config_.sweep_interval, [this] { return stopping_; });
    if (stopping_) break;
    lock.unlock();
    registry_->sweep();
    lock.lock();
  }
}

void Server::install_routes() {
  auto& http = *http_;
  // Leave room for multipart framing; the file limit is checked per part.
  http.set_payload_max_length(config_.max_upload_bytes + 64 * 1024);
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 413) send_error(res, 413, "upload exceeds the size limit");
    else if (res.status == 404) send_error(res, 404, "not found");
    else send_error(res, res.status, httplib::status_message(res.status));
  });
  http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    spdlog::error("request failed: {}", what);
    send_error(res, 500, what);
  });

  http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  http.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200,
              {{"status", "ok"},
               {"classifier", backend_.upload_classifier ? backend_.upload_classifier->name() : ""},
               {"backend_passages", backend_.passages.size()},
               {"sessions", registry_->size()}});
  });

  http.Get("/api/schema", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, to_json(backend_.schema));
  });

  http.Post("/api/session", [this](const httplib::Request&, httplib::Response& res) {
    try {
      const auto s = registry_->create();
      send_json(res, 201, {{"session_id", s->id}});
    } catch (const std::exception& e) {
      send_error(res, 503, e.what());
    }
  });

  // Runs `fn` on a live session under its operation lock.
  auto with_session = [this](const httplib::Request& req, httplib::Response& res, auto&& fn) {
    const std::string id = req.path_params.at("id");
    const auto s = registry_->find(id);
    if (!s) return send_error(res, 404, "unknown or expired session");
    std::lock_guard lock(s->op_mutex);
    if (s->ended) return send_error(res, 404, "unknown or expired session");
    try {
      fn(*s);
    } catch (const HttpError& e) {
      send_error(res, e.status, e.message);
    }
  };

  http.Post("/api/session/:id/upload", [this, with_session](const httplib::Request& req, httplib::Response& res) {
    with_session(req, res, [&](Session& s) {
      if (!req.is_multipart_form_data() || !req.has_file("file"))
        throw HttpError{400, "expected a multipart upload with a 'file' field"};
      const auto file = req.get_file_value("file");
      if (file.content.size() > config_.max_upload_bytes) throw HttpError{413, "upload exceeds the size limit"};
      const std::string filename = file.filename.empty() ? "upload.txt" : file.filename;
      check_text_payload(filename, file.content);

      UploadRecord record;
      record.upload_id = std::to_string(s.uploads.size() + 1);
      record.filename = std::filesystem::path(filename).filename().string();
      record.format = lower_extension(filename) == ".jsonl" ? UploadFormat::jsonl : UploadFormat::txt;
      record.size_bytes = file.content.size();
      record.documents = parse_upload(record, file.content).size();
      record.stored_path = s.storage_dir / (record.upload_id + "_" + safe_filename(filename));
      try {
        write_file(record.stored_path, file.content);
      } catch (const std::exception& e) {
        throw HttpError{500, std::string("could not store the upload: ") + e.what()};
      }
      s.uploads.push_back(record);
      s.result.reset();
      s.status = AnalysisStatus::idle;
      send_json(res, 201,
                {{"upload_id", record.upload_id},
                 {"filename", record.filename},
                 {"format", record.format == UploadFormat::txt ? "txt" : "jsonl"},
                 {"size_bytes", record.size_bytes},
                 {"documents", record.documents},
                 {"message", "File uploaded successfully."}});
    });
  });

  http.Post("/api/session/:id/analyze", [this, with_session](const httplib::Request& req, httplib::Response& res) {
    AnalyzeSources sources;
    try {
      const json body = req.body.empty() ? json::object() : json::parse(req.body);
      if (!body.is_object()) throw std::runtime_error("expected an object");
      if (body.contains("use_uploads")) sources.use_uploads = body.at("use_uploads").get<bool>();
      if (body.contains("use_backend")) sources.use_backend = body.at("use_backend").get<bool>();
    } catch (const std::exception& e) {
      return send_error(res, 400, std::string("invalid analyze request: ") + e.what());
    }
    if (!sources.use_uploads && !sources.use_backend)
      return send_error(res, 400, "select at least one data source (use_uploads or use_backend)");

    with_session(req, res, [&](Session& s) {
      s.status = AnalysisStatus::running;
      try {
        std::vector<Document> docs;
        if (sources.use_uploads) {
          for (const auto& u : s.uploads) {
            auto part = parse_upload(u, read_file(u.stored_path));
            docs.insert(docs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
          }
        }
        s.result = analyze(docs, backend_, sources);
        s.last_error.clear();
        s.status = AnalysisStatus::done;
      } catch (const HttpError& e) {
        s.status = AnalysisStatus::failed;
        s.last_error = e.message;
        throw;
      } catch (const std::exception& e) {
        s.status = AnalysisStatus::failed;
        s.last_error = e.what();
        throw HttpError{500, e.what()};
      }
      json body = page_to_json(query_results(*s.result, SearchQuery{}), s.id);
      body["status"] = to_string(s.status.load());
      send_json(res, 200, body);
    });
  });

  http.Get("/api/session/:id/status", [this](const httplib::Request& req, httplib::Response& res) {
    // Reads only atomics and the upload count, so it does not wait for a
    // running analysis.
    const auto s = registry_->find(req.path_params.at("id"));
    if (!s) return send_error(res, 404, "unknown or expired session");
    send_json(res, 200, {{"session_id", s->id}, {"status", to_string(s->status.load())}});
  });

  http.Get("/api/session/:id/results", [this, with_session](const httplib::Request& req, httplib::Response& res) {
    SearchQuery q;
    if (req.has_param("class") && !req.get_param_value("class").empty()) {
      const auto c = backend_.schema.resolve(req.get_param_value("class"));
      if (!c) return send_error(res, 400, "unknown class '" + req.get_param_value("class") + "'");
      q.class_filter = *c;
    }
    if (req.has_param("q")) q.text_query = req.get_param_value("q");
    if (req.has_param("page")) {
      if (!parse_size(req.get_param_value("page"), q.page) || q.page < 1 || q.page > 1000000000)
        return send_error(res, 400, "page must be a positive integer");
    }
    if (req.has_param("page_size")) {
      if (!parse_size(req.get_param_value("page_size"), q.page_size) || q.page_size < 1 ||
          q.page_size > SearchQuery::kMaxPageSize)
        return send_error(res, 400, "page_size must be an integer in [1, 500]");
    }
    with_session(req, res, [&](Session& s) {
      if (!s.result) throw HttpError{409, "no analysis results yet; call analyze first"};
      send_json(res, 200, page_to_json(query_results(*s.result, q), s.id));
    });
  });

  http.Delete("/api/session/:id", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.path_params.at("id");
    if (!registry_->end(id)) return send_error(res, 404, "unknown or expired session");
    send_json(res, 200, {{"session_id", id}, {"status", "deleted"}});
  });

  if (config_.static_dir) {
    if (!http.set_mount_point("/", config_.static_dir->string()))
      spdlog::warn("static directory {} not found", config_.static_dir->string());
  }
}

}  // namespace sustext::service
