#include "ttc/adapters/chat_client.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <semaphore>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "ttc/core/digest.hpp"
#include "ttc/core/errors.hpp"

namespace ttc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ChatError::kind_name() const {
  switch (kind_) {
    case Kind::auth: return "auth";
    case Kind::rate_limit: return "rate-limit";
    case Kind::server: return "server";
    case Kind::network: return "network";
    case Kind::bad_response: return "bad response";
  }
  return "network";
}

struct ChatClient::Endpoint {
  explicit Endpoint(int slots) : in_flight(slots) {}
  std::counting_semaphore<1024> in_flight;
};

namespace {

struct SlotGuard {
  std::counting_semaphore<1024>& sem;
  explicit SlotGuard(std::counting_semaphore<1024>& s) : sem(s) { sem.acquire(); }
  ~SlotGuard() { sem.release(); }
};

// One endpoint object per base URL, shared by every client in the process.
std::shared_ptr<ChatClient::Endpoint> shared_endpoint(const std::string& base_url, int slots) {
  static std::mutex mutex;
  static std::map<std::string, std::weak_ptr<ChatClient::Endpoint>> registry;
  std::lock_guard lock(mutex);
  if (auto existing = registry[base_url].lock()) return existing;
  auto created = std::make_shared<ChatClient::Endpoint>(slots);
  registry[base_url] = created;
  return created;
}

}  // namespace

ChatClient::ChatClient(ChatClientConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigError("chat client: base_url is required");
  if (config_.model.empty()) throw ConfigError("chat client: model is required");
  if (config_.max_in_flight < 1 || config_.max_in_flight > 1024) {
    throw ConfigError("chat client: max_in_flight must be in 1..1024");
  }
  if (config_.max_retries < 0) throw ConfigError("chat client: max_retries must be >= 0");
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
      throw ConfigError("environment variable " + config_.api_key_env + " (API key) is not set");
    }
    api_key_ = key;
  }
  endpoint_ = shared_endpoint(config_.base_url, config_.max_in_flight);
}

std::string ChatClient::cache_key(const std::string& model, const std::string& prompt,
                                  const ChatParams& params, std::uint64_t seed) {
  const json key = {{"model", model},
                    {"prompt", prompt},
                    {"temperature", params.temperature},
                    {"max_tokens", params.max_tokens},
                    {"seed", seed}};
  return sha256_hex(key.dump());
}

json ChatClient::request_body(const std::string& prompt, std::uint64_t seed) const {
  return {{"model", config_.model},
          {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
          {"temperature", config_.params.temperature},
          {"max_tokens", config_.params.max_tokens},
          {"seed", seed}};
}

std::string extract_content(const std::string& response_body) {
  const auto j = json::parse(response_body, nullptr, false);
  if (j.is_discarded()) throw ChatError(ChatError::Kind::bad_response, "response is not JSON");
  try {
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw ChatError(ChatError::Kind::bad_response, "response lacks choices[0].message.content");
  }
}

std::optional<std::string> ChatClient::read_cache(const std::string& key) const {
  if (config_.cache_dir.empty()) return std::nullopt;
  std::ifstream in(config_.cache_dir / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  const auto j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("response") || !j["response"].is_string()) {
    return std::nullopt;
  }
  try {
    extract_content(j["response"].get<std::string>());
  } catch (const ChatError&) {
    return std::nullopt;
  }
  return j["response"].get<std::string>();
}

void ChatClient::write_cache(const std::string& key, const json& request, const std::string& response) const {
  if (config_.cache_dir.empty()) return;
  fs::create_directories(config_.cache_dir);
  const auto final_path = config_.cache_dir / (key + ".json");
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << std::this_thread::get_id();
  const auto tmp = config_.cache_dir / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << json{{"request", request}, {"response", response}}.dump(2) << "\n";
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) fs::remove(tmp, ec);
}

ChatResult ChatClient::complete(const std::string& prompt, std::uint64_t seed) const {
  ChatResult result;
  const auto key = cache_key(config_.model, prompt, config_.params, seed);
  if (auto cached = read_cache(key)) {
    result.text = extract_content(*cached);
    result.from_cache = true;
    result.events.push_back("cache hit " + key);
    return result;
  }

  const json body = request_body(prompt, seed);
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  auto backoff = config_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    std::optional<ChatError> failure;
    {
      SlotGuard slot(endpoint_->in_flight);
      httplib::Client client(config_.base_url);
      const auto secs = config_.timeout.count() / 1000;
      const auto usecs = (config_.timeout.count() % 1000) * 1000;
      client.set_connection_timeout(secs, usecs);
      client.set_read_timeout(secs, usecs);
      client.set_write_timeout(secs, usecs);
      ++network_calls_;
      auto res = client.Post(config_.path, headers, payload, "application/json");
      const std::string label = "attempt " + std::to_string(attempt + 1) + ": ";
      if (!res) {
        failure = ChatError(ChatError::Kind::network, "request failed: " + httplib::to_string(res.error()));
        result.events.push_back(label + "network error");
      } else {
        result.events.push_back(label + "HTTP " + std::to_string(res->status));
        if (res->status == 200) {
          result.text = extract_content(res->body);
          write_cache(key, body, res->body);
          return result;
        }
        if (res->status == 401 || res->status == 403) {
          throw ChatError(ChatError::Kind::auth, "authentication rejected (HTTP " + std::to_string(res->status) + ")",
                          res->status);
        }
        if (res->status == 429) {
          failure = ChatError(ChatError::Kind::rate_limit, "rate limited (HTTP 429)", 429);
        } else if (res->status >= 500) {
          failure = ChatError(ChatError::Kind::server, "server error (HTTP " + std::to_string(res->status) + ")",
                              res->status);
        } else {
          throw ChatError(ChatError::Kind::bad_response, "unexpected HTTP " + std::to_string(res->status),
                          res->status);
        }
      }
    }
    if (attempt >= config_.max_retries) throw *failure;
    ++result.retries;
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

Completion ChatSolver::complete(const Query& query, std::uint64_t seed) const {
  Completion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.text = client_->complete(query.prompt, seed).text;
  } catch (const ChatError& e) {
    c.error = e.kind_name() + ": " + e.what();
  }
  c.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return c;
}

}  // namespace ttc
