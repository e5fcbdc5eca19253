#include "feedsim/harness/experiment.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "feedsim/core/error.hpp"
#include "feedsim/exchange/exchange.hpp"
#include "feedsim/socialfeed/http_backends.hpp"
#include "feedsim/socialfeed/pregenerate.hpp"
#include "feedsim/socialfeed/prompts.hpp"

namespace feedsim::harness {

BackendFactory default_backends(const ExperimentConfig& cfg) {
  BackendFactory f;
  if (cfg.feed.generator.kind == "http") {
    auto opts = cfg.feed.generator.http;
    f.generator = [opts] { return std::make_unique<social::HttpTextGen>(opts); };
  } else {
    f.generator = [] { return std::make_unique<social::TemplateGenerator>(); };
  }
  if (cfg.classifier.kind == "http") {
    auto ep = cfg.classifier.http;
    f.classifier = [ep] { return std::make_unique<social::HttpSentiment>(ep); };
  } else {
    f.classifier = [] { return std::make_unique<social::LexiconSentiment>(); };
  }
  return f;
}

namespace {

void probe_backends(const ExperimentConfig& cfg, const BackendFactory& backends) {
  if (has_sentiment(cfg.mode) && cfg.classifier.kind == "http") {
    backends.classifier()->classify("startup check");
  }
  const bool generates = cfg.mode == Mode::direct || (has_sentiment(cfg.mode) && !cfg.feed.archive);
  if (generates && cfg.feed.generator.kind == "http") {
    social::GenerationRequest req;
    req.author = social::AuthorKind::rl_agent;
    req.symbol = cfg.symbol;
    req.phrase = social::SentimentPhrase{};
    req.prompt = social::build_rl_prompt({}, *req.phrase);
    backends.generator()->generate(req);
  }
}

}  // namespace

RunInputs prepare_inputs(const ExperimentConfig& cfg, const BackendFactory& backends) {
  RunInputs in;
  std::vector<orderbook::LobsterMessage> flow;
  if (cfg.lobster_file) {
    try {
      flow = orderbook::read_lobster_file(*cfg.lobster_file);
    } catch (const ParseError& e) {
      throw DataError(cfg.lobster_file->string() + ": " + e.what());
    }
  } else {
    flow = generate_flow(*cfg.synthetic);
  }
  if (flow.empty()) throw DataError("order flow is empty");
  in.flow = std::make_shared<const std::vector<orderbook::LobsterMessage>>(std::move(flow));

  probe_backends(cfg, backends);
  if (has_sentiment(cfg.mode)) {
    if (cfg.feed.archive) {
      in.feed = std::make_shared<const social::FeedStore>(social::load_feed(*cfg.feed.archive));
    } else {
      auto gen = backends.generator();
      in.feed = std::make_shared<const social::FeedStore>(
          social::pregenerate_feed(social::submissions(*in.flow), feed_pregen_config(cfg), *gen, &in.feed_report));
    }
  }
  return in;
}

EpisodeResult run_episode(const ExperimentConfig& cfg, const RunInputs& inputs, td3::Td3Learner* learner,
                          social::TextGenBackend* generator, social::SentimentBackend* classifier,
                          EpisodeWindow window, std::uint64_t kernel_seed, const EpisodeOptions& options) {
  const SimTime t0 = std::min(inputs.flow->front().time, window.start);
  sim::Kernel kernel(kernel_seed, t0);
  kernel.record_trace(options.record_trace);

  auto ex_cfg = cfg.exchange;
  ex_cfg.symbol = cfg.symbol;
  auto& ex = kernel.emplace_agent<exchange::ExchangeAgent>(ex_cfg, inputs.flow);
  social::FeedSession session(inputs.feed, cfg.mode == Mode::direct);

  agents::RlAgent* rl = nullptr;
  if (has_rl(cfg.mode)) {
    if (!learner) throw std::invalid_argument("mode needs a learner");
    agents::RlAgentConfig rc = cfg.rl;
    rc.training = options.training;
    rc.post = cfg.mode == Mode::direct;
    rl = &kernel.emplace_agent<agents::RlAgent>(std::string(kRlAgentName), ex.id(), window.start, window.end, rc,
                                                *learner, cfg.symbol, &session, rc.post ? generator : nullptr,
                                                options.metrics);
  }
  agents::SentimentAgent* sa = nullptr;
  if (has_sentiment(cfg.mode)) {
    if (!classifier) throw std::invalid_argument("mode needs a classifier");
    sa = &kernel.emplace_agent<agents::SentimentAgent>(std::string(kSentimentAgentName), ex.id(), window.start,
                                                       window.end, cfg.sentiment, session, *classifier);
  }

  kernel.start();
  const auto run = kernel.run_until(window.end);

  EpisodeResult out;
  out.events = run.events_processed;
  const auto md = ex.market_data(static_cast<std::size_t>(cfg.rl.levels), static_cast<std::size_t>(cfg.rl.depth),
                                 window.end);
  if (rl) {
    out.rl_value = rl->finish(md);
    out.rl = rl->stats();
    out.rl_orders = rl->orders_sent();
  }
  if (sa) {
    out.sentiment_value = agents::mark_to_market(sa->portfolio(), ex.book().mid(), ex.last_defined_mid());
    out.sentiment = sa->stats();
    out.sentiment_orders = sa->orders_sent();
  }
  out.injected_posts = session.injected_count();
  out.trace_hash = kernel.trace_hash();
  if (options.record_trace) out.trace = kernel.trace();
  return out;
}

TrialResult run_trial(const ExperimentConfig& cfg, const RunInputs& inputs, const BackendFactory& backends,
                      std::size_t trial, std::uint64_t seed) {
  TrialResult res;
  res.trial = trial;
  res.seed = seed;
  const SeedTree tree(seed);
  const auto& p = cfg.protocol;
  const EpisodeWindow is_window{p.in_sample_start, p.in_sample_end()};
  const EpisodeWindow oos_window{p.oos_start(), p.oos_end()};

  std::unique_ptr<td3::Td3Learner> learner;
  if (has_rl(cfg.mode)) {
    learner = std::make_unique<td3::Td3Learner>(cfg.td3, td3::NetworkDims::for_book(cfg.td3), tree.seed("learner"));
  }
  std::unique_ptr<social::TextGenBackend> generator;
  if (cfg.mode == Mode::direct) generator = backends.generator();
  std::unique_ptr<social::SentimentBackend> classifier;
  if (has_sentiment(cfg.mode)) classifier = backends.classifier();
  std::unique_ptr<td3::MetricsCsv> metrics;
  if (cfg.write_metrics && learner) {
    std::filesystem::create_directories(cfg.out_dir);
    metrics = std::make_unique<td3::MetricsCsv>(cfg.out_dir / ("metrics_trial" + std::to_string(trial) + ".csv"));
  }

  auto episode = [&](EpisodeWindow w, const std::string& tag, bool training) {
    EpisodeOptions o;
    o.training = training;
    o.metrics = training ? metrics.get() : nullptr;
    return run_episode(cfg, inputs, learner.get(), generator.get(), classifier.get(), w,
                       tree.seed("episode/" + tag), o);
  };
  auto add_rows = [&](const EpisodeResult& e, std::string_view phase) {
    if (e.rl_value) {
      res.rows.push_back({cfg.mode, cfg.symbol, trial, std::string(phase), std::string(kRlAgentName), *e.rl_value});
    }
    if (e.sentiment_value) {
      res.rows.push_back(
          {cfg.mode, cfg.symbol, trial, std::string(phase), std::string(kSentimentAgentName), *e.sentiment_value});
    }
  };

  if (learner) {
    for (std::size_t pass = 0; pass < p.training_passes; ++pass) {
      res.training.push_back(episode(is_window, "train/" + std::to_string(pass), true));
    }
    res.learner_updates_before_eval = learner->critic_updates();
  }
  res.in_sample = episode(is_window, "in_sample", false);
  add_rows(*res.in_sample, kPhaseInSample);
  if (cfg.mode != Mode::sentiment_solo) {
    res.oos = episode(oos_window, "oos", false);
    add_rows(*res.oos, kPhaseOos);
  }
  if (learner) res.learner_updates_after_eval = learner->critic_updates();
  return res;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const RunInputs& inputs,
                                      const BackendFactory& backends, std::vector<TrialResult>* details) {
  const auto seeds = cfg.trial_seeds();
  std::vector<TrialResult> results(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (std::size_t k = next++; k < seeds.size(); k = next++) {
      try {
        results[k] = run_trial(cfg, inputs, backends, k, seeds[k]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = seeds.size();
      }
    }
  };
  const std::size_t n_workers = std::min(cfg.workers, seeds.size());
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (const auto& r : results) rows.insert(rows.end(), r.rows.begin(), r.rows.end());
  if (details) *details = std::move(results);
  return rows;
}

}  // namespace feedsim::harness
