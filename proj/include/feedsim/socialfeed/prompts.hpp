#pragma once

#include <span>
#include <string>

#include "feedsim/core/types.hpp"
#include "feedsim/socialfeed/post.hpp"

namespace feedsim::social {

/// "BUY 100 @ $223.5000".
std::string render_order(const OrderRecord& order);
/// One rendered order per line.
std::string render_orders(std::span<const OrderRecord> orders);

/// Throws std::invalid_argument on an empty order list.
std::string build_analyst_prompt(std::span<const OrderRecord> orders);
/// `requested` must be positive or negative.
std::string build_trader_prompt(std::span<const OrderRecord> orders, SentimentLabel requested);
/// An empty tape renders as "(no recent orders)".
std::string build_rl_prompt(std::span<const OrderRecord> orders, const SentimentPhrase& phrase);

/// Trader posts agree with the trade that followed them.
SentimentLabel sentiment_for_following(Side following) noexcept;

}  // namespace feedsim::social
