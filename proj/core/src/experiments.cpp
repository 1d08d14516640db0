#include "propfair/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "propfair/rng.hpp"

namespace propfair {

namespace {

std::size_t parse_size(std::string_view text, const std::string& what) {
  std::size_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("cannot parse " + what + " from '" + std::string(text) + "'");
  }
  return value;
}

// Acklam's rational approximation to the standard normal quantile,
// |relative error| < 1.2e-9 across (0, 1).
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

std::string format_freq(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

enum class TrialOracle { kYes, kNo, kUnresolved };

TrialOracle oracle_verdict(const Instance& inst, const SearchLimits& limits) {
  const MatchingCaseResult fast = exists_proportional_matching_case(inst);
  if (fast.verdict == MatchingCaseVerdict::kYes) return TrialOracle::kYes;
  if (fast.verdict == MatchingCaseVerdict::kNo) return TrialOracle::kNo;
  if (inst.agents() > limits.max_agents || inst.goods() > limits.max_goods) {
    return TrialOracle::kUnresolved;
  }
  const ExistenceResult full = exists_proportional(inst, limits);
  switch (full.verdict) {
    case ExistVerdict::kYes:
      return TrialOracle::kYes;
    case ExistVerdict::kNo:
      return TrialOracle::kNo;
    default:
      return TrialOracle::kUnresolved;
  }
}

}  // namespace

std::size_t ExperimentConfig::goods_for(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("agent count must be positive");
  switch (regime) {
    case Regime::kMultiple:
      if (multiple_k == 0) throw std::invalid_argument("multiple regime needs k >= 1");
      return multiple_k * n;
    case Regime::kSuperlinear: {
      if (!(superlinear_power > 1.0)) {
        throw std::invalid_argument("superlinear regime needs an exponent > 1");
      }
      const auto m = static_cast<std::size_t>(
          std::floor(std::pow(static_cast<double>(n), superlinear_power) + 1e-9));
      return std::max(m, n);
    }
    case Regime::kCustom:
      if (custom_goods < n) {
        throw std::invalid_argument("custom regime has m=" + std::to_string(custom_goods) +
                                    " < n=" + std::to_string(n));
      }
      return custom_goods;
  }
  throw std::invalid_argument("unknown regime");
}

void ExperimentConfig::set_regime(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("regime '" + std::string(text) +
                                "' missing ':' (expected multiple:k | superlinear:n^p | custom:m)");
  }
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  if (name == "multiple") {
    regime = Regime::kMultiple;
    multiple_k = parse_size(arg, "multiple regime k");
    if (multiple_k == 0) throw std::invalid_argument("multiple regime needs k >= 1");
  } else if (name == "superlinear") {
    if (arg.size() < 3 || arg.substr(0, 2) != "n^") {
      throw std::invalid_argument("superlinear regime expects 'superlinear:n^p', got '" +
                                  std::string(text) + "'");
    }
    const std::string power(arg.substr(2));
    char* end = nullptr;
    const double p = std::strtod(power.c_str(), &end);
    if (end != power.c_str() + power.size() || !(p > 1.0)) {
      throw std::invalid_argument("superlinear exponent '" + power + "' must be a number > 1");
    }
    regime = Regime::kSuperlinear;
    superlinear_power = p;
  } else if (name == "custom") {
    regime = Regime::kCustom;
    custom_goods = parse_size(arg, "custom regime m");
  } else {
    throw std::invalid_argument("unknown regime '" + std::string(name) + "'");
  }
}

std::string ExperimentConfig::regime_string() const {
  switch (regime) {
    case Regime::kMultiple:
      return "multiple:" + std::to_string(multiple_k);
    case Regime::kSuperlinear: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "superlinear:n^%g", superlinear_power);
      return buf;
    }
    case Regime::kCustom:
      return "custom:" + std::to_string(custom_goods);
  }
  return {};
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials,
                                          double confidence) {
  if (trials == 0) throw std::invalid_argument("wilson_interval needs trials >= 1");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  const double z = inverse_normal_cdf(0.5 + confidence / 2.0);
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Instance remark1_instance(std::size_t n, std::uint64_t seed) {
  if (n < 3) {
    throw std::invalid_argument("remark1_instance needs n >= 3; the per-agent share only "
                                "exceeds the maximum good value from there");
  }
  return sample_instance(DistributionSpec::uniform(0.4, 0.6), n, 2 * n - 1, seed);
}

Instance remark2_instance(std::size_t n, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("remark2_instance needs an even n >= 2");
  }
  const DistributionSpec low = DistributionSpec::uniform(0.0, 0.1);
  const DistributionSpec high = DistributionSpec::uniform(0.9, 1.0);
  std::vector<double> utilities(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < n; ++g) {
      utilities[i * n + g] = (g < n / 2 ? low : high).sample(seed, i, g);
    }
  }
  return Instance(n, n, std::move(utilities));
}

std::pair<Margin, double> resolve_margin(const ExperimentConfig& cfg) {
  const double mean = cfg.dist.mean();
  if (!cfg.delta_override) {
    return {margin_for(cfg.dist, cfg.beta_floor), mean};
  }
  const double delta = *cfg.delta_override;
  if (!(delta > 0.0)) {
    throw std::invalid_argument("delta override must be positive");
  }
  const double threshold = (1.0 + delta) * mean;
  if (threshold > cfg.dist.max_support()) {
    throw std::invalid_argument("delta override " + std::to_string(delta) +
                                " pushes the threshold past the support maximum of " +
                                cfg.dist.to_string());
  }
  Margin margin;
  margin.delta = delta;
  margin.beta = cfg.dist.tail_probability(threshold);
  if (!(margin.beta > 0.0)) {
    throw std::invalid_argument("delta override " + std::to_string(delta) +
                                " leaves zero tail mass for " + cfg.dist.to_string());
  }
  return {margin, mean};
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (cfg.n_values.empty()) throw std::invalid_argument("n_values must be nonempty");

  const auto [margin, mean] = resolve_margin(cfg);
  AllocatorConfig alloc_cfg;
  alloc_cfg.margin = margin;
  alloc_cfg.mean = mean;
  alloc_cfg.verify = cfg.verify;

  std::vector<std::pair<std::size_t, std::size_t>> points;
  points.reserve(cfg.n_values.size());
  for (const std::size_t n : cfg.n_values) {
    points.emplace_back(n, cfg.goods_for(n));
  }
  std::sort(points.begin(), points.end());

  const unsigned workers = cfg.threads != 0
                               ? cfg.threads
                               : std::max(1u, std::thread::hardware_concurrency());

  ExperimentSummary summary;
  summary.margin = margin;
  summary.mean = mean;
  for (const auto& [n, m] : points) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> successes{0};
    std::atomic<std::size_t> exists{0};
    std::atomic<std::size_t> unresolved{0};

    const auto start = std::chrono::steady_clock::now();
    auto body = [&]() {
      while (true) {
        const std::size_t t = next.fetch_add(1);
        if (t >= cfg.trials) return;
        const std::uint64_t trial_seed = mix64(cfg.seed, n, t);
        const Instance inst = sample_instance(cfg.dist, n, m, trial_seed);
        const AllocatorOutcome outcome = cfg.regime == Regime::kMultiple
                                             ? theorem1_allocate(inst, alloc_cfg)
                                             : theorem2_allocate(inst, alloc_cfg);
        if (outcome.success()) successes.fetch_add(1);
        if (cfg.oracle_check) {
          switch (oracle_verdict(inst, cfg.oracle_limits)) {
            case TrialOracle::kYes:
              exists.fetch_add(1);
              break;
            case TrialOracle::kNo:
              break;
            case TrialOracle::kUnresolved:
              unresolved.fetch_add(1);
              break;
          }
        }
      }
    };

    const unsigned thread_count = static_cast<unsigned>(
        std::min<std::size_t>(workers, cfg.trials));
    if (thread_count <= 1) {
      body();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(thread_count);
      for (unsigned w = 0; w < thread_count; ++w) pool.emplace_back(body);
      for (auto& th : pool) th.join();
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);

    ExperimentRow row;
    row.n = n;
    row.m = m;
    row.trials = cfg.trials;
    row.seed = cfg.seed;
    row.alloc_successes = successes.load();
    row.alloc_freq = static_cast<double>(row.alloc_successes) / static_cast<double>(cfg.trials);
    std::tie(row.alloc_ci_lo, row.alloc_ci_hi) = wilson_interval(row.alloc_successes, cfg.trials);
    row.oracle_ran = cfg.oracle_check && unresolved.load() == 0;
    row.oracle_skipped = cfg.oracle_check && !row.oracle_ran;
    if (row.oracle_ran) {
      row.exists_count = exists.load();
      row.exists_freq = static_cast<double>(row.exists_count) / static_cast<double>(cfg.trials);
      std::tie(row.exists_ci_lo, row.exists_ci_hi) = wilson_interval(row.exists_count, cfg.trials);
    }
    row.mean_trial_ms = elapsed.count() / static_cast<double>(cfg.trials);
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

std::string to_csv(const ExperimentSummary& summary) {
  std::string out =
      "n,m,trials,alloc_success,alloc_ci_lo,alloc_ci_hi,"
      "exists,exists_ci_lo,exists_ci_hi,oracle_skipped,seed\n";
  for (const ExperimentRow& row : summary.rows) {
    out += std::to_string(row.n) + ',' + std::to_string(row.m) + ',' +
           std::to_string(row.trials) + ',';
    out += format_freq(row.alloc_freq) + ',' + format_freq(row.alloc_ci_lo) + ',' +
           format_freq(row.alloc_ci_hi) + ',';
    if (row.oracle_ran) {
      out += format_freq(row.exists_freq) + ',' + format_freq(row.exists_ci_lo) + ',' +
             format_freq(row.exists_ci_hi) + ',';
    } else {
      out += ",,,";
    }
    out += (row.oracle_skipped ? "true" : "false");
    out += ',' + std::to_string(row.seed) + '\n';
  }
  return out;
}

}  // namespace propfair
