#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "feedsim/core/types.hpp"
#include "feedsim/socialfeed/post.hpp"

namespace feedsim::social {

struct GenerationRequest {
  AuthorKind author = AuthorKind::analyst;
  std::string symbol;
  std::vector<OrderRecord> orders;  // context, oldest first
  /// Trader: requested label. RL agent: quantized phrase. Analyst: neither.
  std::optional<SentimentLabel> requested;
  std::optional<SentimentPhrase> phrase;
  std::string prompt;
  std::uint64_t seed = 0;
};

class TextGenBackend {
 public:
  virtual ~TextGenBackend() = default;
  /// Throws BackendError on failure.
  virtual std::string generate(const GenerationRequest& request) = 0;
};

class SentimentBackend {
 public:
  virtual ~SentimentBackend() = default;
  /// Throws BackendError on failure.
  virtual Classification classify(std::string_view text) = 0;
};

/// Counts keyword hits after lowercasing and splitting on non-alphanumerics.
/// label = sign(pos - neg); confidence = |pos - neg| / max(1, pos + neg).
class LexiconSentiment : public SentimentBackend {
 public:
  LexiconSentiment();
  LexiconSentiment(std::vector<std::string> positive, std::vector<std::string> negative);

  Classification classify(std::string_view text) override;

  struct Hits {
    int positive = 0;
    int negative = 0;
  };
  Hits count(std::string_view text) const;

  static const std::vector<std::string>& default_positive();
  static const std::vector<std::string>& default_negative();

 private:
  std::unordered_set<std::string> positive_;
  std::unordered_set<std::string> negative_;
};

/// Offline stand-in for a language model: assembles 2-4 sentences from
/// seeded phrase banks. The text's lexicon label is the target label, with
/// confidence 0.5 (somewhat), 0.6 (very) or 1.0 (extremely).
///
/// Targets: trader = requested label; RL agent = phrase; analyst = net
/// direction of the context orders (more buys ⇒ positive, tie ⇒ neutral).
/// Non-RL posts draw their intensity from the seed.
class TemplateGenerator : public TextGenBackend {
 public:
  std::string generate(const GenerationRequest& request) override;

  /// The sentiment the generator aims for on `request`.
  static SentimentPhrase target(const GenerationRequest& request);
};

}  // namespace feedsim::social
