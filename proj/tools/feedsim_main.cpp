#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "feedsim/core/error.hpp"
#include "feedsim/harness/config.hpp"
#include "feedsim/harness/experiment.hpp"
#include "feedsim/harness/report.hpp"
#include "feedsim/harness/synthetic.hpp"
#include "feedsim/socialfeed/pregenerate.hpp"

namespace {

using namespace feedsim;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct Overrides {
  std::optional<std::string> mode;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
};

harness::ExperimentConfig load(const std::string& path, const Overrides& o) {
  auto cfg = harness::load_config(path);
  if (o.mode) cfg.mode = harness::parse_mode(*o.mode);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.seeds.clear();
  }
  if (o.trials) {
    if (!cfg.seeds.empty() && *o.trials <= cfg.seeds.size()) {
      cfg.seeds.resize(*o.trials);
    } else {
      cfg.seeds.clear();
    }
    cfg.trials = *o.trials;
  }
  if (o.out) cfg.out_dir = *o.out;
  if (o.workers) cfg.workers = *o.workers;
  cfg.validate();
  return cfg;
}

int cmd_run(const std::string& config, const Overrides& o) {
  const auto cfg = load(config, o);
  const auto backends = harness::default_backends(cfg);
  const auto inputs = harness::prepare_inputs(cfg, backends);
  if (inputs.feed_report.gaps > 0) {
    std::cerr << "feed: " << inputs.feed_report.gaps << " posts skipped after retries\n";
  }
  const auto rows = harness::run_experiment(cfg, inputs, backends);
  harness::emit(cfg.out_dir, rows);
  harness::write_summary_csv(std::cout, harness::summarize(rows));
  return 0;
}

int cmd_gen_feed(const std::string& config, const std::optional<std::string>& out) {
  const auto cfg = load(config, {});
  auto backends = harness::default_backends(cfg);
  auto run_cfg = cfg;
  run_cfg.feed.archive.reset();
  if (!harness::has_sentiment(run_cfg.mode)) run_cfg.mode = harness::Mode::indirect;
  const auto inputs = harness::prepare_inputs(run_cfg, backends);
  const std::filesystem::path path = out ? std::filesystem::path(*out) : cfg.out_dir / "feed.jsonl";
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  social::save_feed(path, *inputs.feed);
  std::cout << "wrote " << inputs.feed->size() << " posts to " << path.string() << " (" << inputs.feed_report.gaps
            << " gaps)\n";
  return 0;
}

int cmd_gen_flow(const std::string& config, const std::optional<std::string>& out) {
  const auto cfg = load(config, {});
  if (!cfg.synthetic) throw ConfigError("gen-flow needs data.synthetic in the config");
  const auto flow = harness::generate_flow(*cfg.synthetic);
  const std::filesystem::path path = out ? std::filesystem::path(*out) : cfg.out_dir / "flow.csv";
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  orderbook::write_lobster_file(path, flow);
  std::cout << "wrote " << flow.size() << " messages to " << path.string() << '\n';
  return 0;
}

int cmd_stats(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) throw DataError("cannot open " + in_path);
  const auto rows = harness::read_results_csv(in);
  if (rows.empty()) throw DataError(in_path + " has no result rows");
  harness::write_summary_csv(std::cout, harness::summarize(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based market simulator with a learning trader and a social feed"};
  app.require_subcommand(1);

  std::string config;
  Overrides o;
  std::optional<std::string> out_file;
  std::string results;

  auto* run = app.add_subcommand("run", "Run an experiment and write results, summary and distributions CSVs");
  run->add_option("--config", config, "Experiment config (JSON)")->required();
  run->add_option("--mode", o.mode, "rl_solo | sentiment_solo | indirect | direct");
  run->add_option("--trials", o.trials, "Number of trials");
  run->add_option("--out", o.out, "Output directory");
  run->add_option("--seed", o.seed, "Master seed");
  run->add_option("--workers", o.workers, "Concurrent trials");

  auto* gen_feed = app.add_subcommand("gen-feed", "Pre-generate the social feed archive (JSONL)");
  gen_feed->add_option("--config", config, "Experiment config (JSON)")->required();
  gen_feed->add_option("--out", out_file, "Output file (default <out_dir>/feed.jsonl)");

  auto* gen_flow = app.add_subcommand("gen-flow", "Write the synthetic order flow as a LOBSTER message file");
  gen_flow->add_option("--config", config, "Experiment config (JSON)")->required();
  gen_flow->add_option("--out", out_file, "Output file (default <out_dir>/flow.csv)");

  auto* stats = app.add_subcommand("stats", "Summary statistics of a results.csv");
  stats->add_option("--in", results, "results.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(config, o);
    if (gen_feed->parsed()) return cmd_gen_feed(config, out_file);
    if (gen_flow->parsed()) return cmd_gen_flow(config, out_file);
    if (stats->parsed()) return cmd_stats(results);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
