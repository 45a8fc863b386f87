#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/core/solver.hpp"

namespace ttc {

struct ChatParams {
  double temperature = 0.7;
  int max_tokens = 1024;
};

struct ChatClientConfig {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  ChatParams params;
  std::filesystem::path cache_dir;  // empty disables caching
  std::string api_key_env;          // name of the variable holding the key; empty for none
  int max_retries = 4;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds timeout{60'000};
  int max_in_flight = 4;  // shared by every client of the same base_url
};

class ChatError : public std::runtime_error {
 public:
  enum class Kind { auth, rate_limit, server, network, bad_response };
  ChatError(Kind kind, const std::string& what, int status = 0)
      : std::runtime_error(what), kind_(kind), status_(status) {}
  Kind kind() const { return kind_; }
  int status() const { return status_; }
  std::string kind_name() const;

 private:
  Kind kind_;
  int status_;
};

struct ChatResult {
  std::string text;
  bool from_cache = false;
  int retries = 0;
  std::vector<std::string> events;  // one line per attempt, e.g. "attempt 1: HTTP 429"
};

/// OpenAI-compatible chat-completions client with an on-disk response cache.
/// Thread-safe. The API key is read from the named environment variable at
/// construction, so a missing key fails before any network traffic.
class ChatClient {
 public:
  explicit ChatClient(ChatClientConfig config);

  /// Cache hit returns without network I/O. Throws ChatError once retries are spent.
  ChatResult complete(const std::string& prompt, std::uint64_t seed) const;

  /// SHA-256 over (model, prompt, params, seed).
  static std::string cache_key(const std::string& model, const std::string& prompt,
                               const ChatParams& params, std::uint64_t seed);

  nlohmann::json request_body(const std::string& prompt, std::uint64_t seed) const;
  const ChatClientConfig& config() const { return config_; }
  std::uint64_t network_calls() const { return network_calls_.load(); }

  struct Endpoint;

 private:
  std::optional<std::string> read_cache(const std::string& key) const;
  void write_cache(const std::string& key, const nlohmann::json& request, const std::string& response) const;

  ChatClientConfig config_;
  std::string api_key_;
  std::shared_ptr<Endpoint> endpoint_;
  mutable std::atomic<std::uint64_t> network_calls_{0};
};

/// Extracts choices[0].message.content; throws ChatError(bad_response).
std::string extract_content(const std::string& response_body);

/// Solver facade over a ChatClient; every role is sent as a single user message.
class ChatSolver final : public Solver {
 public:
  ChatSolver(std::string id, std::shared_ptr<const ChatClient> client)
      : id_(std::move(id)), client_(std::move(client)) {}
  const std::string& id() const override { return id_; }
  Completion complete(const Query& query, std::uint64_t seed) const override;

 private:
  std::string id_;
  std::shared_ptr<const ChatClient> client_;
};

}  // namespace ttc
