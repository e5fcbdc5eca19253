#include "feedsim/harness/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "feedsim/core/error.hpp"

namespace feedsim::harness {

double quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

StatsSummary descriptive_stats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("statistics of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  StatsSummary s;
  s.count = v.size();
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    s.std_defined = true;
  }
  s.min = v.front();
  s.max = v.back();
  s.q25 = quantile(v, 0.25);
  s.median = quantile(v, 0.5);
  s.q75 = quantile(v, 0.75);
  return s;
}

std::string format_dollars(Price units) {
  const bool neg = units < 0;
  const auto mag = static_cast<unsigned long long>(neg ? -units : units);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%llu.%04llu", neg ? "-" : "", mag / 10'000ULL, mag % 10'000ULL);
  return buf;
}

Price parse_dollars(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  Price whole = 0;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    whole = whole * 10 + (text[i++] - '0');
    ++digits;
  }
  Price frac = 0;
  std::size_t fdigits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (fdigits == 4) throw std::invalid_argument("more than four decimals: " + text);
      frac = frac * 10 + (text[i++] - '0');
      ++fdigits;
    }
  }
  if (i != text.size() || digits + fdigits == 0) throw std::invalid_argument("bad dollar amount: " + text);
  for (; fdigits < 4; ++fdigits) frac *= 10;
  const Price units = whole * kUnitsPerDollar + frac;
  return neg ? -units : units;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "mode,symbol,trial,phase,agent,dollars\n";
  for (const auto& r : rows) {
    out << to_string(r.mode) << ',' << r.symbol << ',' << r.trial << ',' << r.phase << ',' << r.agent << ','
        << format_dollars(r.value) << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t row = 0;
  if (!std::getline(in, line) || line != "mode,symbol,trial,phase,agent,dollars") {
    throw DataError("results file lacks the expected header");
  }
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw DataError("results row " + std::to_string(row) + ": expected 6 fields");
    try {
      ResultRow r;
      r.mode = parse_mode(f[0]);
      r.symbol = f[1];
      std::size_t used = 0;
      r.trial = std::stoul(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument("trial");
      r.phase = f[3];
      r.agent = f[4];
      r.value = parse_dollars(f[5]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw DataError("results row " + std::to_string(row) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> samples;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SummaryRow& s) {
      return s.mode == r.mode && s.symbol == r.symbol && s.agent == r.agent && s.phase == r.phase;
    });
    std::size_t k = static_cast<std::size_t>(it - out.begin());
    if (it == out.end()) {
      out.push_back({r.mode, r.symbol, r.agent, r.phase, {}});
      samples.emplace_back();
    }
    samples[k].push_back(r.dollars());
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].stats = descriptive_stats(samples[k]);
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "mode,symbol,agent,phase,count,Mean,Std,Min,25%,50%,75%,Max,std_defined\n";
  char buf[256];
  for (const auto& s : summary) {
    const auto& t = s.stats;
    std::snprintf(buf, sizeof buf, "%zu,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%d", t.count, t.mean, t.std, t.min, t.q25,
                  t.median, t.q75, t.max, t.std_defined ? 1 : 0);
    out << to_string(s.mode) << ',' << s.symbol << ',' << s.agent << ',' << s.phase << ',' << buf << '\n';
  }
}

void write_distributions_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "mode,symbol,agent,phase,rank,trial,dollars\n";
  std::vector<const ResultRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const ResultRow* a, const ResultRow* b) {
    return std::tie(a->mode, a->symbol, a->agent, a->phase, a->value, a->trial) <
           std::tie(b->mode, b->symbol, b->agent, b->phase, b->value, b->trial);
  });
  std::size_t rank = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& r = *sorted[i];
    if (i == 0 || r.mode != sorted[i - 1]->mode || r.symbol != sorted[i - 1]->symbol ||
        r.agent != sorted[i - 1]->agent || r.phase != sorted[i - 1]->phase) {
      rank = 0;
    }
    out << to_string(r.mode) << ',' << r.symbol << ',' << r.agent << ',' << r.phase << ',' << rank++ << ','
        << r.trial << ',' << format_dollars(r.value) << '\n';
  }
}

void emit(const std::filesystem::path& dir, const std::vector<ResultRow>& rows) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw DataError("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("results.csv");
    write_results_csv(f, rows);
  }
  if (rows.empty()) return;
  {
    auto f = open("summary.csv");
    write_summary_csv(f, summarize(rows));
  }
  {
    auto f = open("distributions.csv");
    write_distributions_csv(f, rows);
  }
}

}  // namespace feedsim::harness
