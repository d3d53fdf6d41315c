// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON-over-HTTP service: translation plus the contribution loop.
//
//   POST /translate             {text, src?, tgt?}        -> {output, trace}
//   POST /contribute            ContributionDraft fields  -> {id}
//   GET  /contributions/export  [?side=source|target]      -> aligned pairs
//   GET  /health                                          -> {status, lexicon_entries, phrase_rules}

#pragma once

#include <httplib.h>

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>

#include <json.hpp>

#include "ladino/contribution_store.hpp"
#include "ladino/error.hpp"
#include "ladino/translator.hpp"
#include "ladino/utf8.hpp"

namespace ladino {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path store_path = "contributions.jsonl";
  std::size_t max_text_length = 10000;  // codepoints
  std::string cors_origin = "*";        // empty disables CORS headers

  /// Overrides from LADINO_HOST, LADINO_PORT, LADINO_STORE,
  /// LADINO_MAX_TEXT_LENGTH and LADINO_CORS_ORIGIN.
  static ServiceConfig from_env() { return from_env(ServiceConfig{}); }
  static ServiceConfig from_env(ServiceConfig c) {
    if (const char* v = std::getenv("LADINO_HOST"); v && *v) c.host = v;
    if (const char* v = std::getenv("LADINO_PORT"); v && *v) c.port = std::atoi(v);
    if (const char* v = std::getenv("LADINO_STORE"); v && *v) c.store_path = v;
    if (const char* v = std::getenv("LADINO_MAX_TEXT_LENGTH"); v && *v) c.max_text_length = std::strtoul(v, nullptr, 10);
    if (const char* v = std::getenv("LADINO_CORS_ORIGIN")) c.cors_origin = v;
    return c;
  }
};

inline nlohmann::json to_json(const TraceEntry& e) {
  return {{"source", e.source}, {"mechanism", std::string(to_string(e.mechanism))}, {"output", e.output}};
}

inline nlohmann::json to_json(const TranslationResult& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : r.trace) trace.push_back(to_json(e));
  return {{"output", r.output}, {"trace", std::move(trace)}};
}

class Service {
 public:
  /// Rule data is shared read-only; the store is opened immediately.
  Service(std::shared_ptr<const RuleData> data, ServiceConfig config)
      : data_(std::move(data)), config_(std::move(config)), store_(config_.store_path) {
    server_.set_payload_max_length(std::max<std::size_t>(1 << 20, config_.max_text_length * 8));
    routes();
  }

  const ServiceConfig& config() const noexcept { return config_; }
  ContributionStore& store() noexcept { return store_; }

  /// Binds the configured host and port (0 = any free port) and returns the
  /// bound port.
  int bind() {
    const int port = config_.port == 0 ? server_.bind_to_any_port(config_.host)
                                       : (server_.bind_to_port(config_.host, config_.port) ? config_.port : -1);
    if (port < 0) throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
    port_ = port;
    return port;
  }

  /// Serves until stop(). Call bind() first.
  void run() { server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  int port() const noexcept { return port_; }

 private:
  static void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
  }

  static void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, {{"error", message}});
  }

  static std::optional<std::string> string_field(const nlohmann::json& body, const char* key, bool required,
                                                 std::string& problem) {
    if (!body.contains(key) || body.at(key).is_null()) {
      if (required) problem = std::string("missing field '") + key + "'";
      return std::nullopt;
    }
    if (!body.at(key).is_string()) {
      problem = std::string("field '") + key + "' must be a string";
      return std::nullopt;
    }
    return body.at(key).get<std::string>();
  }

  void routes() {
    server_.set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
      if (config_.cors_origin.empty()) return;
      res.set_header("Access-Control-Allow-Origin", config_.cors_origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server_.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server_.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      send_error(res, 500, what);
    });
    server_.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) send_error(res, res.status, httplib::status_message(res.status));
    });

    server_.Post("/translate", [this](const httplib::Request& req, httplib::Response& res) {
      handle_translate(req, res);
    });
    server_.Post("/contribute", [this](const httplib::Request& req, httplib::Response& res) {
      handle_contribute(req, res);
    });
    server_.Get("/contributions/export", [this](const httplib::Request& req, httplib::Response& res) {
      handle_export(req, res);
    });
    server_.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200,
                {{"status", "ok"},
                 {"lexicon_entries", data_->lexicon.entry_count()},
                 {"phrase_rules", data_->phrases.size()}});
    });
  }

  static std::optional<nlohmann::json> parse_object(const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      send_error(res, 400, "request body must be a JSON object");
      return std::nullopt;
    }
    return body;
  }

  void handle_translate(const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_object(req, res);
    if (!body) return;
    std::string problem;
    const auto text = string_field(*body, "text", true, problem);
    const auto src = string_field(*body, "src", false, problem);
    const auto tgt = string_field(*body, "tgt", false, problem);
    if (!problem.empty()) return send_error(res, 400, problem);
    const std::string s = src.value_or("spa");
    const std::string t = tgt.value_or("lad");
    if (s != "spa" || t != "lad") return send_error(res, 400, "unsupported language pair " + s + "-" + t);
    if (utf8::length(*text) > config_.max_text_length)
      return send_error(res, 413, "text exceeds " + std::to_string(config_.max_text_length) + " characters");
    try {
      send_json(res, 200, to_json(translate(*text, *data_)));
    } catch (const Error& e) {
      send_error(res, 500, std::string("rule data fault: ") + e.what());
    }
  }

  void handle_contribute(const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_object(req, res);
    if (!body) return;
    std::string problem;
    ContributionDraft draft;
    draft.source_lang = string_field(*body, "source_lang", true, problem).value_or("");
    draft.target_lang = string_field(*body, "target_lang", true, problem).value_or("");
    draft.source_text = string_field(*body, "source_text", true, problem).value_or("");
    draft.machine_output = string_field(*body, "machine_output", true, problem).value_or("");
    draft.corrected_text = string_field(*body, "corrected_text", true, problem).value_or("");
    draft.client_note = string_field(*body, "client_note", false, problem);
    if (!problem.empty()) return send_error(res, 400, problem);
    if (const auto why = validate(draft)) return send_error(res, 400, *why);
    try {
      const auto rec = store_.append(draft);
      send_json(res, 201, {{"id", rec.id}});
    } catch (const StorageError& e) {
      send_error(res, 507, e.what());
    }
  }

  void handle_export(const httplib::Request& req, httplib::Response& res) {
    const auto pairs = store_.export_pairs();
    const auto joined = [](const std::vector<std::string>& lines) {
      std::string out;
      for (const auto& l : lines) out += l + "\n";
      return out;
    };
    const std::string side = req.has_param("side") ? req.get_param_value("side") : "";
    if (side == "source" || side == "target") {
      res.set_content(joined(side == "source" ? pairs.source : pairs.corrected), "text/plain; charset=utf-8");
      return;
    }
    if (!side.empty()) return send_error(res, 400, "side must be 'source' or 'target'");
    send_json(res, 200,
              {{"count", pairs.source.size()}, {"source", joined(pairs.source)}, {"target", joined(pairs.corrected)}});
  }

  std::shared_ptr<const RuleData> data_;
  ServiceConfig config_;
  ContributionStore store_;
  httplib::Server server_;
  int port_ = 0;
};

}  // namespace ladino
