#include "feedsim/socialfeed/backends.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>

#include "feedsim/core/rng.hpp"
#include "feedsim/socialfeed/prompts.hpp"

namespace feedsim::social {

namespace {

// Every bank entry has a fixed number of lexicon hits: pos1/neg1 exactly
// one, pos2/neg2 exactly two, neutral none. Tests check this against the
// default lexicon.
const std::vector<std::string> kPos1 = {
    "Buyers keep stepping in and the tape looks strong.",
    "I see real upside from here.",
    "This setup feels like a breakout in the making.",
    "Order flow has me optimistic into the close.",
    "Those bids tell me a rally is building.",
    "Management keeps delivering and the product pipeline looks solid.",
};
const std::vector<std::string> kPos2 = {
    "Strong bids and a clean breakout pattern on the book.",
    "I am bullish here and expect more gains today.",
    "Buyers are confident and the uptrend is intact.",
    "This looks like a solid rally with plenty of room to run.",
    "Demand is surging and the chart looks like a winner.",
};
const std::vector<std::string> kNeg1 = {
    "The offers stacking up look weak to me.",
    "I see real downside from here.",
    "This feels like a breakdown waiting to happen.",
    "Order flow has me pessimistic into the close.",
    "Those offers tell me a selloff is building.",
    "Competition is catching up and margins look fragile.",
};
const std::vector<std::string> kNeg2 = {
    "Weak bids and a clear breakdown pattern on the book.",
    "I am bearish here and expect more losses today.",
    "Sellers look worried and the downtrend is intact.",
    "This looks like a fragile bounce with a slump to follow.",
    "Supply keeps plunging through levels and the chart looks like a loser.",
};
// Hedges: one hit of the opposite polarity.
const std::vector<std::string> kHedgeAgainstPositive = {
    "Sure, a few offers look weak, but buyers are absorbing them.",
    "Some downside is possible on a pullback.",
    "Volume could fade into lunch and look bearish for a while.",
};
const std::vector<std::string> kHedgeAgainstNegative = {
    "Sure, a few bids look strong, but sellers keep hitting them.",
    "Some upside is possible on a squeeze.",
    "Buyers could show up and look bullish for a while.",
};
const std::vector<std::string> kNeutral = {
    "Flow looks balanced between bids and offers.",
    "Hard to call a direction from this tape.",
    "Waiting for the next few prints before taking a side.",
    "Spreads are tight and size is steady on both sides.",
};
const std::vector<std::string> kOpeners = {
    "Watching ${SYM} after {ORDER} hit the tape.",
    "Quick look at the ${SYM} book: {ORDER} just printed.",
    "Been tracking ${SYM} all session and just saw {ORDER}.",
    "Here is my read on ${SYM} right now, last print {ORDER}.",
};
const std::vector<std::string> kTags = {"#StockMarket", "#Trading", "#DayTrading", "#Investing"};

const std::string& pick(const std::vector<std::string>& bank, RngStream& rng) {
  return bank[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(bank.size()) - 1))];
}

std::vector<std::string> pick_distinct(const std::vector<std::string>& bank, std::size_t n, RngStream& rng) {
  auto idx = rng.sample_indices(bank.size(), n);
  rng.shuffle(idx);
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(bank[i]);
  return out;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

LexiconSentiment::LexiconSentiment() : LexiconSentiment(default_positive(), default_negative()) {}

LexiconSentiment::LexiconSentiment(std::vector<std::string> positive, std::vector<std::string> negative)
    : positive_(positive.begin(), positive.end()), negative_(negative.begin(), negative.end()) {}

const std::vector<std::string>& LexiconSentiment::default_positive() {
  static const std::vector<std::string> words = {
      "bullish", "strong", "strength", "rally", "rallying", "upside", "gain", "gains", "breakout", "optimistic",
      "surge", "surging", "confident", "uptrend", "winner", "outperform", "solid", "soaring"};
  return words;
}

const std::vector<std::string>& LexiconSentiment::default_negative() {
  static const std::vector<std::string> words = {
      "bearish", "weak", "weakness", "selloff", "downside", "loss", "losses", "breakdown", "pessimistic", "slump",
      "plunge", "plunging", "worried", "downtrend", "loser", "underperform", "fragile", "dump"};
  return words;
}

LexiconSentiment::Hits LexiconSentiment::count(std::string_view text) const {
  Hits h;
  for (const auto& t : tokens(text)) {
    if (positive_.contains(t)) ++h.positive;
    if (negative_.contains(t)) ++h.negative;
  }
  return h;
}

Classification LexiconSentiment::classify(std::string_view text) {
  const Hits h = count(text);
  const int diff = h.positive - h.negative;
  Classification c;
  c.label = diff > 0 ? SentimentLabel::positive : diff < 0 ? SentimentLabel::negative : SentimentLabel::neutral;
  c.confidence = static_cast<double>(std::abs(diff)) / std::max(1, h.positive + h.negative);
  return c;
}

SentimentPhrase TemplateGenerator::target(const GenerationRequest& request) {
  SentimentPhrase p;
  switch (request.author) {
    case AuthorKind::rl_agent:
      return request.phrase.value_or(SentimentPhrase{});
    case AuthorKind::trader:
      p.polarity = request.requested.value_or(SentimentLabel::neutral);
      break;
    case AuthorKind::analyst: {
      long net = 0;
      for (const auto& o : request.orders) net += o.side == Side::buy ? 1 : -1;
      p.polarity = net > 0 ? SentimentLabel::positive : net < 0 ? SentimentLabel::negative : SentimentLabel::neutral;
      break;
    }
  }
  if (p.polarity != SentimentLabel::neutral) {
    RngStream rng(derive_seed(request.seed, "intensity"));
    p.intensity = static_cast<Intensity>(rng.uniform_int(1, 3));
  }
  return p;
}

std::string TemplateGenerator::generate(const GenerationRequest& request) {
  const SentimentPhrase goal = target(request);
  RngStream rng(derive_seed(request.seed, "text"));

  std::string opener = pick(kOpeners, rng);
  const std::string sym = request.symbol.empty() ? std::string("SYN") : request.symbol;
  replace_all(opener, "{SYM}", sym);
  replace_all(opener, "{ORDER}", request.orders.empty() ? std::string("a quiet tape") : render_order(request.orders.back()));

  std::vector<std::string> body;
  const bool positive = goal.polarity == SentimentLabel::positive;
  const auto& two = positive ? kPos2 : kNeg2;
  const auto& one = positive ? kPos1 : kNeg1;
  const auto& hedge = positive ? kHedgeAgainstPositive : kHedgeAgainstNegative;
  if (goal.polarity == SentimentLabel::neutral || goal.intensity == Intensity::none) {
    body = pick_distinct(kNeutral, static_cast<std::size_t>(rng.uniform_int(1, 2)), rng);
  } else if (goal.intensity == Intensity::somewhat) {
    body = {pick(two, rng), pick(one, rng), pick(hedge, rng)};  // 3 for, 1 against
  } else if (goal.intensity == Intensity::very) {
    body = pick_distinct(two, 2, rng);  // 4 for, 1 against
    body.push_back(pick(hedge, rng));
  } else {
    body = pick_distinct(two, 2, rng);  // 4 for
  }

  std::string text = opener;
  for (const auto& s : body) text += " " + s;
  text += " #" + sym + " " + pick(kTags, rng);
  return text;
}

}  // namespace feedsim::social
