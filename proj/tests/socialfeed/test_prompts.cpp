#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "feedsim/core/rng.hpp"
#include "feedsim/socialfeed/backends.hpp"
#include "feedsim/socialfeed/prompts.hpp"

using namespace feedsim;
using namespace feedsim::social;

namespace {

OrderRecord order(Side side, Price price, Quantity qty, std::int64_t sec = 34'200) {
  return {side, price, qty, SimTime::from_seconds(sec)};
}

std::string replace_once(std::string s, const std::string& slot, const std::string& value) {
  const auto pos = s.find(slot);
  if (pos == std::string::npos) throw std::logic_error("slot missing");
  return s.replace(pos, slot.size(), value);
}

const std::string kAnalystTemplate =
    "You are an opinionated stock analyst who likes to post on social media.  You have recently observed the "
    "following stock orders: [orders].  Write a social media post analyzing the stock.  Pay attention to the "
    "orders when forming your opinion.  Do not mention a sentiment score.  Do not write any text outside of the "
    "post itself.";

const std::string kTraderTemplate =
    "You are an opinionated day trader who likes to post on social media.  You have recently observed the "
    "following stock orders placed by other traders: [orders].  Write a [sentiment] social media post giving "
    "your informed opinion based on the observed orders.  Do not mention a sentiment score.  Do not write any "
    "text outside of the post itself.";

const std::string kRlTemplate =
    "You are an opinionated stock analyst who likes to post on social media.  You have recently observed the "
    "following stock orders: [orders].  You feel [sentiment] about the stock.  Write a social media post "
    "analyzing the stock.  Pay attention to the orders when forming your opinion.  Also include any relevant "
    "knowledge you have about the company's products, management, or competition.  Do not mention a sentiment "
    "score.  Do not mention individual trade quantities.  No bullet lists.  Do not write any text outside of "
    "the post itself.";

std::vector<OrderRecord> mixed_orders(std::size_t n) {
  std::vector<OrderRecord> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(order(i % 3 == 0 ? Side::sell : Side::buy, 2'235'000 + static_cast<Price>(i) * 100,
                      100 + static_cast<Quantity>(i), 34'200 + static_cast<std::int64_t>(i)));
  }
  return v;
}

}  // namespace

TEST(Prompts, RenderOrder) {
  EXPECT_EQ(render_order(order(Side::buy, 2'235'000, 100)), "BUY 100 @ $223.5000");
  EXPECT_EQ(render_order(order(Side::sell, 1'000'001, 7)), "SELL 7 @ $100.0001");
  EXPECT_EQ(render_order(order(Side::sell, 50, 1)), "SELL 1 @ $0.0050");
}

TEST(Prompts, AnalystTemplateVerbatim) {
  const std::vector<OrderRecord> o = {order(Side::buy, 2'235'000, 100), order(Side::sell, 2'235'100, 200)};
  const std::string expected =
      replace_once(kAnalystTemplate, "[orders]", "\nBUY 100 @ $223.5000\nSELL 200 @ $223.5100\n");
  EXPECT_EQ(build_analyst_prompt(o), expected);
}

TEST(Prompts, TraderTemplateVerbatim) {
  const std::vector<OrderRecord> o = {order(Side::buy, 2'235'000, 100)};
  std::string expected = replace_once(kTraderTemplate, "[orders]", "\nBUY 100 @ $223.5000\n");
  EXPECT_EQ(build_trader_prompt(o, SentimentLabel::negative), replace_once(expected, "[sentiment]", "negative"));
  EXPECT_EQ(build_trader_prompt(o, SentimentLabel::positive), replace_once(expected, "[sentiment]", "positive"));
}

TEST(Prompts, RlTemplateVerbatim) {
  const std::vector<OrderRecord> o = {order(Side::sell, 1'000'000, 300)};
  const SentimentPhrase phrase{SentimentLabel::negative, Intensity::very};
  std::string expected = replace_once(kRlTemplate, "[orders]", "\nSELL 300 @ $100.0000\n");
  EXPECT_EQ(build_rl_prompt(o, phrase), replace_once(expected, "[sentiment]", "very negative"));
}

TEST(Prompts, ElevenOrdersOnePerLine) {
  const auto o = mixed_orders(11);
  const std::string p = build_analyst_prompt(o);
  const auto open = p.find("orders: \n");
  const auto close = p.find("\n.  Write");
  ASSERT_NE(open, std::string::npos);
  ASSERT_NE(close, std::string::npos);
  const std::string block = p.substr(open + 9, close - open - 9);
  EXPECT_EQ(block, render_orders(o));
  EXPECT_EQ(std::count(block.begin(), block.end(), '\n'), 10);
  EXPECT_TRUE(p.ends_with("Do not write any text outside of the post itself."));
}

TEST(Prompts, EmptyTapeAndBadRequests) {
  const SentimentPhrase neutral{};
  const std::string p = build_rl_prompt({}, neutral);
  EXPECT_NE(p.find("orders: (no recent orders).  You feel neutral about"), std::string::npos);
  EXPECT_THROW(build_analyst_prompt({}), std::invalid_argument);
  const std::vector<OrderRecord> o = {order(Side::buy, 1'000'000, 1)};
  EXPECT_THROW(build_trader_prompt({}, SentimentLabel::positive), std::invalid_argument);
  EXPECT_THROW(build_trader_prompt(o, SentimentLabel::neutral), std::invalid_argument);
}

TEST(Prompts, FollowingOrderSentiment) {
  EXPECT_EQ(sentiment_for_following(Side::buy), SentimentLabel::positive);
  EXPECT_EQ(sentiment_for_following(Side::sell), SentimentLabel::negative);
}

TEST(Prompts, PhraseText) {
  EXPECT_EQ(SentimentPhrase{}.text(), "neutral");
  EXPECT_EQ((SentimentPhrase{SentimentLabel::positive, Intensity::somewhat}.text()), "somewhat positive");
  EXPECT_EQ((SentimentPhrase{SentimentLabel::negative, Intensity::extremely}.text()), "extremely negative");
  EXPECT_EQ((SentimentPhrase{SentimentLabel::positive, Intensity::none}.text()), "neutral");
}

TEST(Lexicon, CountsTokensCaseInsensitively) {
  LexiconSentiment lex;
  const auto h = lex.count("BULLISH, strong... but weak-ish? Rally!rally");
  EXPECT_EQ(h.positive, 4);
  EXPECT_EQ(h.negative, 1);
  const auto c = lex.classify("BULLISH, strong... but weak-ish? Rally!rally");
  EXPECT_EQ(c.label, SentimentLabel::positive);
  EXPECT_DOUBLE_EQ(c.confidence, 3.0 / 5.0);
  const auto n = lex.classify("nothing to see");
  EXPECT_EQ(n.label, SentimentLabel::neutral);
  EXPECT_EQ(n.confidence, 0.0);
  EXPECT_EQ(lex.classify("strong weak").label, SentimentLabel::neutral);
}

TEST(Lexicon, CustomWords) {
  LexiconSentiment lex({"moon"}, {"rekt"});
  EXPECT_EQ(lex.classify("to the moon").label, SentimentLabel::positive);
  EXPECT_EQ(lex.classify("bullish rekt").label, SentimentLabel::negative);
}

TEST(Lexicon, DefaultListsAreDisjoint) {
  for (const auto& p : LexiconSentiment::default_positive()) {
    for (const auto& n : LexiconSentiment::default_negative()) EXPECT_NE(p, n);
  }
}

// Each intensity has a fixed hit profile: for/against counts.
TEST(TemplateGenerator, HitProfilePerIntensity) {
  LexiconSentiment lex;
  TemplateGenerator gen;
  struct Case {
    Intensity intensity;
    int hits_for, hits_against;
  };
  const Case cases[] = {{Intensity::somewhat, 3, 1}, {Intensity::very, 4, 1}, {Intensity::extremely, 4, 0}};
  for (const auto polarity : {SentimentLabel::positive, SentimentLabel::negative}) {
    for (const auto& c : cases) {
      for (std::uint64_t seed = 0; seed < 300; ++seed) {
        GenerationRequest req;
        req.author = AuthorKind::rl_agent;
        req.orders = mixed_orders(seed % 12);
        req.phrase = SentimentPhrase{polarity, c.intensity};
        req.seed = seed;
        const auto text = gen.generate(req);
        const auto h = lex.count(text);
        const int f = polarity == SentimentLabel::positive ? h.positive : h.negative;
        const int a = polarity == SentimentLabel::positive ? h.negative : h.positive;
        ASSERT_EQ(f, c.hits_for) << text;
        ASSERT_EQ(a, c.hits_against) << text;
      }
    }
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenerationRequest req;
    req.author = AuthorKind::rl_agent;
    req.phrase = SentimentPhrase{};
    req.seed = seed;
    const auto h = lex.count(gen.generate(req));
    ASSERT_EQ(h.positive + h.negative, 0);
  }
}

TEST(TemplateGenerator, TargetsByAuthor) {
  GenerationRequest analyst;
  analyst.orders = {order(Side::buy, 1, 1), order(Side::buy, 1, 1), order(Side::sell, 1, 1)};
  EXPECT_EQ(TemplateGenerator::target(analyst).polarity, SentimentLabel::positive);
  analyst.orders.push_back(order(Side::sell, 1, 1));
  EXPECT_EQ(TemplateGenerator::target(analyst), SentimentPhrase{});

  GenerationRequest trader;
  trader.author = AuthorKind::trader;
  trader.requested = SentimentLabel::negative;
  const auto t = TemplateGenerator::target(trader);
  EXPECT_EQ(t.polarity, SentimentLabel::negative);
  EXPECT_NE(t.intensity, Intensity::none);

  GenerationRequest rl;
  rl.author = AuthorKind::rl_agent;
  rl.phrase = SentimentPhrase{SentimentLabel::positive, Intensity::very};
  EXPECT_EQ(TemplateGenerator::target(rl), *rl.phrase);
}

TEST(TemplateGenerator, DeterministicAndSymbolAware) {
  TemplateGenerator gen;
  GenerationRequest req;
  req.author = AuthorKind::trader;
  req.requested = SentimentLabel::positive;
  req.symbol = "ACME";
  req.orders = mixed_orders(3);
  req.seed = 42;
  const auto a = gen.generate(req);
  EXPECT_EQ(a, gen.generate(req));
  EXPECT_NE(a.find("$ACME"), std::string::npos);
  EXPECT_NE(a.find("#ACME"), std::string::npos);
  req.seed = 43;
  bool differs = false;
  for (std::uint64_t s = 43; s < 53 && !differs; ++s) {
    req.seed = s;
    differs = gen.generate(req) != a;
  }
  EXPECT_TRUE(differs);
}

// Generated text classifies back to its target.
TEST(TemplateGenerator, ClosedLoopOverAuthors) {
  TemplateGenerator gen;
  LexiconSentiment lex;
  RngStream rng(5);
  for (int i = 0; i < 600; ++i) {
    GenerationRequest req;
    req.author = static_cast<AuthorKind>(i % 3);
    req.orders = mixed_orders(static_cast<std::size_t>(rng.uniform_int(1, 11)));
    for (auto& o : req.orders) o.side = rng.bernoulli(0.5) ? Side::buy : Side::sell;
    if (req.author == AuthorKind::trader) {
      req.requested = rng.bernoulli(0.5) ? SentimentLabel::positive : SentimentLabel::negative;
    }
    if (req.author == AuthorKind::rl_agent) {
      const auto pol = static_cast<SentimentLabel>(rng.uniform_int(0, 2));
      req.phrase = SentimentPhrase{pol, pol == SentimentLabel::neutral
                                            ? Intensity::none
                                            : static_cast<Intensity>(rng.uniform_int(1, 3))};
    }
    req.seed = rng.next_u64();
    const auto goal = TemplateGenerator::target(req);
    const auto c = lex.classify(gen.generate(req));
    ASSERT_EQ(c.label, goal.polarity);
    if (goal.polarity != SentimentLabel::neutral) {
      ASSERT_GE(c.confidence, 0.5);
    }
  }
}
