#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "feedsim/socialfeed/backends.hpp"

namespace feedsim::social {

struct HttpEndpoint {
  std::string url;  // e.g. http://127.0.0.1:8080/v1/generate
  double timeout_s = 30.0;
};

/// POST {model, system?, prompt, max_tokens, temperature, seed} -> {text}.
class HttpTextGen : public TextGenBackend {
 public:
  struct Options {
    HttpEndpoint endpoint;
    std::string model;
    std::optional<std::string> system;
    int max_tokens = 256;
    double temperature = 0.7;
  };

  explicit HttpTextGen(Options options);
  std::string generate(const GenerationRequest& request) override;

 private:
  Options options_;
};

/// POST {text} -> {label, confidence}.
class HttpSentiment : public SentimentBackend {
 public:
  explicit HttpSentiment(HttpEndpoint endpoint);
  Classification classify(std::string_view text) override;

 private:
  HttpEndpoint endpoint_;
};

/// Splits "http://host:port/path" into ("http://host:port", "/path").
std::pair<std::string, std::string> split_url(const std::string& url);

}  // namespace feedsim::social
