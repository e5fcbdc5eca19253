#include "feedsim/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "feedsim/core/error.hpp"

namespace feedsim::harness {

using nlohmann::json;

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::rl_solo: return "rl_solo";
    case Mode::sentiment_solo: return "sentiment_solo";
    case Mode::indirect: return "indirect";
    case Mode::direct: return "direct";
  }
  return "indirect";
}

Mode parse_mode(std::string_view s) {
  if (s == "rl_solo") return Mode::rl_solo;
  if (s == "sentiment_solo") return Mode::sentiment_solo;
  if (s == "indirect") return Mode::indirect;
  if (s == "direct") return Mode::direct;
  throw ConfigError("unknown mode: " + std::string(s));
}

SimTime parse_clock(const json& v) {
  if (v.is_number()) return SimTime{static_cast<std::int64_t>(std::llround(v.get<double>() * 1e9))};
  if (!v.is_string()) throw ConfigError("clock time must be seconds or \"HH:MM[:SS]\"");
  const auto s = v.get<std::string>();
  int h = 0, m = 0, sec = 0;
  char tail = 0;
  const int n = std::sscanf(s.c_str(), "%d:%d:%d%c", &h, &m, &sec, &tail);
  if (n < 2 || n > 3 || h < 0 || h > 23 || m < 0 || m > 59 || sec < 0 || sec > 59) {
    throw ConfigError("bad clock time: " + s);
  }
  return SimTime::from_seconds(h * 3600 + m * 60 + sec);
}

std::string format_clock(SimTime t) {
  const auto s = t.ns / kNsPerSecond;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", static_cast<long long>(s / 3600),
                static_cast<long long>(s / 60 % 60), static_cast<long long>(s % 60));
  return buf;
}

namespace {

/// Strict view of one JSON object: every key must be consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() == 0) check();
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }
  std::string name(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  template <class T>
  void get(const char* key, T& out) {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(name(key) + " has the wrong type");
    }
  }
  void get_count(const char* key, std::size_t& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw ConfigError(name(key) + " must be a count");
    out = v.get<std::size_t>();
  }
  void get_clock(const char* key, SimTime& out) {
    if (has(key)) out = parse_clock(j_.at(key));
  }

 private:
  void check() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) throw ConfigError("unknown key " + name(k.c_str()));
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

void parse_synthetic(Section& s, SyntheticConfig& c) {
  if (s.has("regime")) {
    std::string r;
    s.get("regime", r);
    try {
      c = regime_preset(r);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  s.get_clock("start", c.start);
  s.get_clock("end", c.end);
  s.get("initial_price", c.initial_price);
  s.get("drift_per_hour", c.drift_per_hour);
  s.get("volatility_per_hour", c.volatility_per_hour);
  s.get("switch_rate_per_hour", c.switch_rate_per_hour);
  s.get("arrival_rate", c.arrival_rate);
  s.get("marketable_share", c.marketable_share);
  s.get("marketable_bias", c.marketable_bias);
  s.get("passive_bias", c.passive_bias);
  s.get("marketable_reach_ticks", c.marketable_reach_ticks);
  s.get("level_decay", c.level_decay);
  s.get("cancel_lifetime_s", c.cancel_lifetime_s);
  s.get("partial_cancel_share", c.partial_cancel_share);
  s.get("max_lots", c.max_lots);
  s.get("initial_levels", c.initial_levels);
  s.get("seed", c.seed);
}

void parse_td3(Section& s, td3::Td3Config& c) {
  s.get_count("seq_len", c.seq_len);
  s.get_count("depth", c.depth);
  s.get_count("embed", c.embed);
  s.get_count("width", c.width);
  s.get_count("blocks", c.blocks);
  s.get("lr", c.lr);
  s.get("explore_sigma", c.explore_sigma);
  s.get("policy_sigma", c.policy_sigma);
  s.get("policy_noise_clip", c.policy_noise_clip);
  s.get_count("batch", c.batch);
  s.get_count("policy_freq", c.policy_freq);
  s.get("tau", c.tau);
  s.get("gamma", c.gamma);
  s.get_count("buffer_capacity", c.buffer_capacity);
  s.get_count("updates_per_step", c.updates_per_step);
}

void parse_cadence(Section& s, agents::Cadence& c) {
  if (s.has("interval_s")) {
    double v = 0;
    s.get("interval_s", v);
    c.interval_ns = static_cast<std::int64_t>(std::llround(v * 1e9));
  }
  s.get("jitter", c.jitter);
}

void parse_latency(Section& s, const char* path, sim::LatencyModel& m) {
  if (!s.has("latency")) return;
  Section l(s.raw("latency"), path);
  l.get("base_ns", m.base_ns);
  l.get("jitter_ns", m.jitter_ns);
  l.get("computation_ns", m.computation_ns);
}

Price ticks(Section& s, const char* key, Price fallback) {
  if (!s.has(key)) return fallback;
  std::int64_t t = 0;
  s.get(key, t);
  return t * kTick;
}

}  // namespace

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  try {
    Section top(j, "");
    if (top.has("mode")) {
      std::string m;
      top.get("mode", m);
      c.mode = parse_mode(m);
    }
    top.get("symbol", c.symbol);
    top.get("seed", c.seed);
    top.get("seeds", c.seeds);
    top.get_count("trials", c.trials);
    top.get_count("workers", c.workers);

    if (top.has("protocol")) {
      Section s(top.raw("protocol"), "protocol");
      s.get_count("training_passes", c.protocol.training_passes);
      s.get_clock("in_sample_start", c.protocol.in_sample_start);
      s.get("in_sample_minutes", c.protocol.in_sample_minutes);
      s.get("oos_gap_minutes", c.protocol.oos_gap_minutes);
      s.get("oos_minutes", c.protocol.oos_minutes);
    }
    if (top.has("data")) {
      Section s(top.raw("data"), "data");
      if (s.has("lobster")) {
        std::string p;
        s.get("lobster", p);
        c.lobster_file = resolve(base_dir, p);
      }
      if (s.has("synthetic")) {
        Section syn(s.raw("synthetic"), "data.synthetic");
        SyntheticConfig sc;
        parse_synthetic(syn, sc);
        c.synthetic = sc;
      }
    }
    if (top.has("exchange")) {
      Section s(top.raw("exchange"), "exchange");
      s.get_clock("market_open", c.exchange.market_open);
      s.get_clock("market_close", c.exchange.market_close);
      if (s.has("snapshot_interval_ms")) {
        std::int64_t ms = 0;
        s.get("snapshot_interval_ms", ms);
        c.exchange.snapshot_interval_ns = ms * 1'000'000;
      }
      s.get_count("snapshot_depth", c.exchange.snapshot_depth);
      s.get_count("tape_capacity", c.exchange.tape_capacity);
      s.get("fee_per_share_units", c.exchange.fee_per_share);
      parse_latency(s, "exchange.latency", c.exchange.latency);
    }
    if (top.has("td3")) {
      Section s(top.raw("td3"), "td3");
      parse_td3(s, c.td3);
    }
    if (top.has("rl_agent")) {
      Section s(top.raw("rl_agent"), "rl_agent");
      parse_cadence(s, c.rl.cadence);
      if (s.has("value_offset_dollars")) {
        double d = 0;
        s.get("value_offset_dollars", d);
        c.rl.value_offset = static_cast<Price>(std::llround(d * kUnitsPerDollar));
      }
      c.rl.aggressiveness = ticks(s, "aggressiveness_ticks", c.rl.aggressiveness);
      c.rl.scale.price_scale = ticks(s, "price_scale_ticks", c.rl.scale.price_scale);
      s.get("price_clip", c.rl.scale.price_clip);
      parse_latency(s, "rl_agent.latency", c.rl.latency);
    }
    if (top.has("sentiment_agent")) {
      Section s(top.raw("sentiment_agent"), "sentiment_agent");
      parse_cadence(s, c.sentiment.cadence);
      parse_latency(s, "sentiment_agent.latency", c.sentiment.latency);
      s.get("lot", c.sentiment.lot);
      c.sentiment.aggressiveness = ticks(s, "aggressiveness_ticks", c.sentiment.aggressiveness);
      s.get("p_seen", c.sentiment.sampling.p_seen);
      s.get_count("cap", c.sentiment.sampling.cap);
    }
    if (top.has("feed")) {
      Section s(top.raw("feed"), "feed");
      if (s.has("archive")) {
        std::string p;
        s.get("archive", p);
        c.feed.archive = resolve(base_dir, p);
      }
      s.get_count("posts_per_minute", c.feed.posts_per_minute);
      s.get_count("context", c.feed.context);
      s.get("analyst_share", c.feed.analyst_share);
      s.get("max_retries", c.feed.max_retries);
      if (s.has("seed")) {
        std::uint64_t v = 0;
        s.get("seed", v);
        c.feed.seed = v;
      }
      if (s.has("generator")) {
        Section g(s.raw("generator"), "feed.generator");
        g.get("kind", c.feed.generator.kind);
        g.get("url", c.feed.generator.http.endpoint.url);
        g.get("timeout_s", c.feed.generator.http.endpoint.timeout_s);
        g.get("model", c.feed.generator.http.model);
        if (g.has("system")) {
          std::string sys;
          g.get("system", sys);
          c.feed.generator.http.system = sys;
        }
        g.get("max_tokens", c.feed.generator.http.max_tokens);
        g.get("temperature", c.feed.generator.http.temperature);
      }
    }
    if (top.has("classifier")) {
      Section s(top.raw("classifier"), "classifier");
      s.get("kind", c.classifier.kind);
      s.get("url", c.classifier.http.url);
      s.get("timeout_s", c.classifier.http.timeout_s);
    }
    if (top.has("output")) {
      Section s(top.raw("output"), "output");
      if (s.has("dir")) {
        std::string d;
        s.get("dir", d);
        c.out_dir = d;
      }
      s.get("metrics", c.write_metrics);
    }
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  c.rl.levels = static_cast<std::int32_t>(c.td3.seq_len);
  c.rl.depth = static_cast<std::int32_t>(c.td3.depth);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

std::vector<std::uint64_t> ExperimentConfig::trial_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  const SeedTree tree(seed);
  for (std::size_t k = 0; k < trials; ++k) out.push_back(tree.seed("trial/" + std::to_string(k)));
  return out;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (symbol.empty()) fail("symbol must be non-empty");
  if (seeds.empty() && trials == 0) fail("trials must be positive");
  if (workers == 0) fail("workers must be positive");
  if (lobster_file.has_value() == synthetic.has_value()) fail("data needs exactly one of lobster or synthetic");
  if (protocol.in_sample_minutes <= 0) fail("protocol.in_sample_minutes must be positive");
  if (protocol.oos_minutes <= 0) fail("protocol.oos_minutes must be positive");
  if (protocol.oos_gap_minutes < 0) fail("protocol.oos_gap_minutes must be non-negative");
  if (has_rl(mode) && protocol.training_passes == 0) fail("protocol.training_passes must be positive");
  if (exchange.snapshot_depth < td3.depth) fail("exchange.snapshot_depth must cover td3.depth");
  if (exchange.snapshot_interval_ns <= 0) fail("exchange.snapshot_interval_ms must be positive");
  if (exchange.tape_capacity == 0) fail("exchange.tape_capacity must be positive");
  if (exchange.fee_per_share < 0) fail("exchange.fee_per_share_units must be non-negative");
  if (rl.value_offset <= 0) fail("rl_agent.value_offset_dollars must be positive");
  if (rl.aggressiveness < 0 || sentiment.aggressiveness < 0) fail("aggressiveness must be non-negative");
  if (rl.scale.price_scale <= 0 || !(rl.scale.price_clip > 0.0)) fail("rl_agent observation scale must be positive");
  if (feed.generator.kind != "template" && feed.generator.kind != "http") fail("feed.generator.kind must be template or http");
  if (feed.generator.kind == "http" && feed.generator.http.endpoint.url.empty()) fail("feed.generator.url is required");
  if (classifier.kind != "lexicon" && classifier.kind != "http") fail("classifier.kind must be lexicon or http");
  if (classifier.kind == "http" && classifier.http.url.empty()) fail("classifier.url is required");
  if (feed.posts_per_minute == 0) fail("feed.posts_per_minute must be positive");
  if (!(feed.analyst_share >= 0.0 && feed.analyst_share <= 1.0)) fail("feed.analyst_share must lie in [0, 1]");
  if (feed.max_retries < 0) fail("feed.max_retries must be non-negative");
  try {
    td3.validate();
    exchange.latency.validate();
    rl.latency.validate();
    sentiment.latency.validate();
    rl.cadence.validate();
    sentiment.cadence.validate();
    sentiment.sampling.validate();
    if (synthetic) synthetic->validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (sentiment.lot <= 0) fail("sentiment_agent.lot must be positive");
}

social::PregenConfig feed_pregen_config(const ExperimentConfig& cfg) {
  social::PregenConfig p;
  p.symbol = cfg.symbol;
  p.start = cfg.protocol.in_sample_start;
  p.end = cfg.protocol.oos_end();
  p.posts_per_minute = cfg.feed.posts_per_minute;
  p.context = cfg.feed.context;
  p.analyst_share = cfg.feed.analyst_share;
  p.max_retries = cfg.feed.max_retries;
  p.seed = cfg.feed.seed.value_or(SeedTree(cfg.seed).seed("feed"));
  return p;
}

}  // namespace feedsim::harness
