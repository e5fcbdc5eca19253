#include "feedsim/socialfeed/prompts.hpp"

#include <cstdio>
#include <stdexcept>

namespace feedsim::social {

namespace {

constexpr std::string_view kAnalyst =
    "You are an opinionated stock analyst who likes to post on social media.  You have recently observed the "
    "following stock orders: [orders].  Write a social media post analyzing the stock.  Pay attention to the "
    "orders when forming your opinion.  Do not mention a sentiment score.  Do not write any text outside of the "
    "post itself.";

constexpr std::string_view kTrader =
    "You are an opinionated day trader who likes to post on social media.  You have recently observed the "
    "following stock orders placed by other traders: [orders].  Write a [sentiment] social media post giving your "
    "informed opinion based on the observed orders.  Do not mention a sentiment score.  Do not write any text "
    "outside of the post itself.";

constexpr std::string_view kRlAgent =
    "You are an opinionated stock analyst who likes to post on social media.  You have recently observed the "
    "following stock orders: [orders].  You feel [sentiment] about the stock.  Write a social media post "
    "analyzing the stock.  Pay attention to the orders when forming your opinion.  Also include any relevant "
    "knowledge you have about the company's products, management, or competition.  Do not mention a sentiment "
    "score.  Do not mention individual trade quantities.  No bullet lists.  Do not write any text outside of the "
    "post itself.";

std::string fill(std::string_view tmpl, std::string_view slot, std::string_view value) {
  std::string out(tmpl);
  const auto pos = out.find(slot);
  if (pos != std::string::npos) out.replace(pos, slot.size(), value);
  return out;
}

// Orders go one per line inside the slot.
std::string order_block(std::span<const OrderRecord> orders) { return "\n" + render_orders(orders) + "\n"; }

}  // namespace

std::string render_order(const OrderRecord& order) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%s %lld @ $%lld.%04lld", std::string(to_string(order.side)).c_str(),
                static_cast<long long>(order.quantity), static_cast<long long>(order.price / kUnitsPerDollar),
                static_cast<long long>(order.price % kUnitsPerDollar));
  return buf;
}

std::string render_orders(std::span<const OrderRecord> orders) {
  std::string out;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) out += '\n';
    out += render_order(orders[i]);
  }
  return out;
}

std::string build_analyst_prompt(std::span<const OrderRecord> orders) {
  if (orders.empty()) throw std::invalid_argument("analyst prompt needs at least one order");
  return fill(kAnalyst, "[orders]", order_block(orders));
}

std::string build_trader_prompt(std::span<const OrderRecord> orders, SentimentLabel requested) {
  if (orders.empty()) throw std::invalid_argument("trader prompt needs at least one order");
  if (requested == SentimentLabel::neutral) throw std::invalid_argument("trader prompt needs a polar sentiment");
  return fill(fill(kTrader, "[orders]", order_block(orders)), "[sentiment]", to_string(requested));
}

std::string build_rl_prompt(std::span<const OrderRecord> orders, const SentimentPhrase& phrase) {
  const std::string block = orders.empty() ? std::string("(no recent orders)") : order_block(orders);
  return fill(fill(kRlAgent, "[orders]", block), "[sentiment]", phrase.text());
}

SentimentLabel sentiment_for_following(Side following) noexcept {
  return following == Side::buy ? SentimentLabel::positive : SentimentLabel::negative;
}

}  // namespace feedsim::social
