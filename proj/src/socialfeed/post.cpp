#include "feedsim/socialfeed/post.hpp"

#include <stdexcept>

namespace feedsim::social {

std::string_view to_string(AuthorKind k) noexcept {
  switch (k) {
    case AuthorKind::analyst: return "analyst";
    case AuthorKind::trader: return "trader";
    case AuthorKind::rl_agent: return "rl_agent";
  }
  return "analyst";
}

std::string_view to_string(SentimentLabel l) noexcept {
  switch (l) {
    case SentimentLabel::negative: return "negative";
    case SentimentLabel::neutral: return "neutral";
    case SentimentLabel::positive: return "positive";
  }
  return "neutral";
}

AuthorKind parse_author_kind(std::string_view s) {
  if (s == "analyst") return AuthorKind::analyst;
  if (s == "trader") return AuthorKind::trader;
  if (s == "rl_agent") return AuthorKind::rl_agent;
  throw std::invalid_argument("unknown author kind: " + std::string(s));
}

SentimentLabel parse_sentiment_label(std::string_view s) {
  if (s == "negative") return SentimentLabel::negative;
  if (s == "neutral") return SentimentLabel::neutral;
  if (s == "positive") return SentimentLabel::positive;
  throw std::invalid_argument("unknown sentiment label: " + std::string(s));
}

std::string SentimentPhrase::text() const {
  if (polarity == SentimentLabel::neutral || intensity == Intensity::none) return "neutral";
  std::string out;
  switch (intensity) {
    case Intensity::somewhat: out = "somewhat "; break;
    case Intensity::very: out = "very "; break;
    case Intensity::extremely: out = "extremely "; break;
    case Intensity::none: break;
  }
  out += to_string(polarity);
  return out;
}

}  // namespace feedsim::social
