#include "feedsim/socialfeed/http_backends.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <json.hpp>

#include "feedsim/core/error.hpp"

namespace feedsim::social {

namespace {

using nlohmann::json;

json post_json(const HttpEndpoint& ep, const json& body) {
  const auto [base, path] = split_url(ep.url);
  httplib::Client client(base);
  const auto secs = static_cast<time_t>(ep.timeout_s);
  const auto usecs = static_cast<time_t>((ep.timeout_s - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) throw BackendError("request to " + ep.url + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw BackendError("request to " + ep.url + " returned HTTP " + std::to_string(res->status));
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw BackendError("malformed response from " + ep.url + ": " + e.what());
  }
}

}  // namespace

std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("endpoint url needs a scheme: " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

HttpTextGen::HttpTextGen(Options options) : options_(std::move(options)) { split_url(options_.endpoint.url); }

std::string HttpTextGen::generate(const GenerationRequest& request) {
  json body = {{"model", options_.model},
               {"prompt", request.prompt},
               {"max_tokens", options_.max_tokens},
               {"temperature", options_.temperature},
               {"seed", request.seed}};
  if (options_.system) body["system"] = *options_.system;
  const json reply = post_json(options_.endpoint, body);
  if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
    throw BackendError("generation response lacks a text field");
  }
  auto text = reply["text"].get<std::string>();
  if (text.empty()) throw BackendError("generation response text is empty");
  return text;
}

HttpSentiment::HttpSentiment(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) { split_url(endpoint_.url); }

Classification HttpSentiment::classify(std::string_view text) {
  const json reply = post_json(endpoint_, json{{"text", std::string(text)}});
  if (!reply.is_object() || !reply.contains("label") || !reply.contains("confidence") ||
      !reply["label"].is_string() || !reply["confidence"].is_number()) {
    throw BackendError("classification response lacks label/confidence");
  }
  Classification c;
  try {
    auto label = reply["label"].get<std::string>();
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    c.label = parse_sentiment_label(label);
  } catch (const std::invalid_argument& e) {
    throw BackendError(e.what());
  }
  c.confidence = reply["confidence"].get<double>();
  if (!std::isfinite(c.confidence) || c.confidence < 0.0 || c.confidence > 1.0) {
    throw BackendError("classification confidence outside [0, 1]");
  }
  return c;
}

}  // namespace feedsim::social
