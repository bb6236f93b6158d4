#include "matot/http_backend.hpp"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace matot {

namespace {

// Splits "https://host:port/some/prefix" into client target and path prefix.
void split_base_url(const std::string& base_url, std::string& scheme_host_port,
                    std::string& path_prefix) {
  const std::size_t scheme_end = base_url.find("://");
  const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const std::size_t path_start = base_url.find('/', host_start);
  if (path_start == std::string::npos) {
    scheme_host_port = base_url;
    path_prefix.clear();
  } else {
    scheme_host_port = base_url.substr(0, path_start);
    path_prefix = base_url.substr(path_start);
  }
  while (!path_prefix.empty() && path_prefix.back() == '/') path_prefix.pop_back();
}

bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

// httplib::Client serializes concurrent requests on one instance, so a
// fresh client per call keeps agents truly parallel. Connection setup is
// noise next to a chat completion.
struct OpenAiHttpBackend::Impl {
  HttpBackendConfig config;
  std::string scheme_host_port;
  std::string path_prefix;

  httplib::Client make_client() const {
    httplib::Client client(scheme_host_port);
    client.set_connection_timeout(config.connect_timeout_s, 0);
    client.set_read_timeout(config.read_timeout_s, 0);
    client.set_write_timeout(config.read_timeout_s, 0);
    return client;
  }
};

OpenAiHttpBackend::OpenAiHttpBackend(HttpBackendConfig config) {
  if (config.base_url.empty()) {
    throw BackendError(BackendErrorKind::config, "http backend: base_url is empty");
  }
  if (config.model.empty()) {
    throw BackendError(BackendErrorKind::config, "http backend: model name is empty");
  }
  std::string scheme_host_port;
  std::string prefix;
  split_base_url(config.base_url, scheme_host_port, prefix);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme_host_port.rfind("https://", 0) == 0) {
    throw BackendError(BackendErrorKind::config,
                       "http backend: built without TLS support, cannot use https URL");
  }
#endif
  impl_ = std::make_unique<Impl>();
  impl_->config = std::move(config);
  impl_->scheme_host_port = std::move(scheme_host_port);
  impl_->path_prefix = std::move(prefix);
  if (!impl_->make_client().is_valid()) {
    throw BackendError(BackendErrorKind::config,
                       "http backend: invalid base_url '" + impl_->config.base_url + "'");
  }
}

OpenAiHttpBackend::~OpenAiHttpBackend() = default;

std::string OpenAiHttpBackend::id() const {
  return "openai:" + impl_->config.model + "@" + impl_->config.base_url;
}

CompletionResult OpenAiHttpBackend::complete(const std::vector<ChatMessage>& messages,
                                             const SamplingParams& params,
                                             const CallContext&) {
  params.validate();

  nlohmann::json body;
  body["model"] = impl_->config.model;
  body["messages"] = nlohmann::json::array();
  for (const ChatMessage& message : messages) {
    body["messages"].push_back(
        {{"role", to_string(message.role)}, {"content", message.content}});
  }
  body["temperature"] = params.temperature;
  body["top_p"] = params.top_p;
  body["n"] = params.n;
  if (params.max_tokens > 0) body["max_tokens"] = params.max_tokens;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!impl_->config.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + impl_->config.api_key);
  }

  const std::string path = impl_->path_prefix + "/v1/chat/completions";
  const RetryPolicy& retry = impl_->config.retry;

  std::string last_error;
  double backoff_ms = retry.initial_backoff_ms;
  for (int attempt = 0; attempt <= retry.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(static_cast<long>(backoff_ms)));
      backoff_ms *= retry.multiplier;
    }

    httplib::Client client = impl_->make_client();
    httplib::Result res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (retryable_status(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw BackendError(BackendErrorKind::malformed_payload,
                         id() + ": HTTP " + std::to_string(res->status) + ": " + res->body);
    }

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(BackendErrorKind::malformed_payload,
                         id() + ": response is not JSON: " + e.what());
    }

    CompletionResult out;
    out.backend_id = id();
    try {
      for (const auto& choice : reply.at("choices")) {
        out.texts.push_back(choice.at("message").at("content").get<std::string>());
      }
      if (reply.contains("usage")) {
        out.prompt_tokens = reply["usage"].value("prompt_tokens", 0L);
        out.completion_tokens = reply["usage"].value("completion_tokens", 0L);
      }
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(BackendErrorKind::malformed_payload,
                         id() + ": unexpected response shape: " + e.what());
    }
    if (static_cast<int>(out.texts.size()) != params.n) {
      throw BackendError(BackendErrorKind::malformed_payload,
                         id() + ": requested n=" + std::to_string(params.n) + " but got " +
                             std::to_string(out.texts.size()) + " choices");
    }
    return out;
  }

  throw BackendError(BackendErrorKind::transport,
                     id() + ": giving up after " + std::to_string(retry.max_retries + 1) +
                         " attempts: " + last_error);
}

}  // namespace matot
