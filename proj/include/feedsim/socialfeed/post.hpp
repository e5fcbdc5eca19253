#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "feedsim/core/types.hpp"

namespace feedsim::social {

enum class AuthorKind : std::uint8_t { analyst, trader, rl_agent };
enum class SentimentLabel : std::uint8_t { negative, neutral, positive };

std::string_view to_string(AuthorKind k) noexcept;
std::string_view to_string(SentimentLabel l) noexcept;
/// Throws std::invalid_argument on unknown names.
AuthorKind parse_author_kind(std::string_view s);
SentimentLabel parse_sentiment_label(std::string_view s);

struct Post {
  std::string post_id;
  std::string symbol;
  SimTime post_time{};
  AuthorKind author = AuthorKind::analyst;
  std::string text;

  friend bool operator==(const Post&, const Post&) = default;
};

struct Classification {
  SentimentLabel label = SentimentLabel::neutral;
  double confidence = 0.0;  // [0, 1]
};

enum class Intensity : std::uint8_t { none, somewhat, very, extremely };

/// A quantized sentiment such as "very negative"; polarity neutral carries
/// intensity none and renders as "neutral".
struct SentimentPhrase {
  SentimentLabel polarity = SentimentLabel::neutral;
  Intensity intensity = Intensity::none;

  std::string text() const;
  friend bool operator==(const SentimentPhrase&, const SentimentPhrase&) = default;
};

}  // namespace feedsim::social
