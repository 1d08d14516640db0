#include "propfair/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

#include "propfair/rng.hpp"

namespace propfair {

namespace {

constexpr double kProbSumTol = 1e-12;

// Slack for tail-vs-floor comparisons; absorbs decimal representation noise
// (e.g. a stored 1-0.8 tail sitting one ulp under a literal 0.2 floor).
constexpr double kBetaSlack = 1e-12;

double parse_double(std::string_view text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("cannot parse " + what + " from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double x) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
    throw std::invalid_argument("uniform bounds [" + format_double(lo) + ", " + format_double(hi) +
                                "] must satisfy 0 <= lo <= hi <= 1");
  }
  DistributionSpec spec;
  spec.kind_ = Kind::kUniform;
  spec.lo_ = lo;
  spec.hi_ = hi;
  spec.mean_ = 0.5 * (lo + hi);
  return spec;
}

DistributionSpec DistributionSpec::bernoulli(double zero_prob) {
  if (!(zero_prob >= 0.0 && zero_prob <= 1.0)) {
    throw std::invalid_argument("bernoulli zero-probability " + format_double(zero_prob) +
                                " outside [0, 1]");
  }
  DistributionSpec spec;
  spec.kind_ = Kind::kBernoulli;
  if (zero_prob > 0.0) {
    spec.values_.push_back(0.0);
    spec.probs_.push_back(zero_prob);
  }
  if (zero_prob < 1.0) {
    spec.values_.push_back(1.0);
    spec.probs_.push_back(1.0 - zero_prob);
  }
  spec.mean_ = 1.0 - zero_prob;
  return spec;
}

DistributionSpec DistributionSpec::discrete(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size()) {
    throw std::invalid_argument("discrete spec needs matching nonempty value/probability lists");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw std::invalid_argument("discrete value " + format_double(values[i]) + " outside [0, 1]");
    }
    if (!(probs[i] >= 0.0)) {
      throw std::invalid_argument("discrete probability " + format_double(probs[i]) + " negative");
    }
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > kProbSumTol) {
    throw std::invalid_argument("discrete probabilities sum to " + format_double(sum) +
                                ", expected 1");
  }

  // Canonical form: ascending support, duplicates merged, zero-mass dropped.
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  DistributionSpec spec;
  spec.kind_ = Kind::kDiscrete;
  for (const std::size_t i : idx) {
    if (probs[i] == 0.0) continue;
    if (!spec.values_.empty() && spec.values_.back() == values[i]) {
      spec.probs_.back() += probs[i];
    } else {
      spec.values_.push_back(values[i]);
      spec.probs_.push_back(probs[i]);
    }
  }
  if (spec.values_.empty()) {
    throw std::invalid_argument("discrete spec has no probability mass");
  }
  spec.mean_ = 0.0;
  for (std::size_t i = 0; i < spec.values_.size(); ++i) {
    spec.mean_ += spec.values_[i] * spec.probs_[i];
  }
  return spec;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution '" + std::string(text) +
                                "' missing ':' (expected uniform:lo,hi | bernoulli:p | "
                                "discrete:v1,p1;v2,p2;...)");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  if (kind == "uniform") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) {
      throw std::invalid_argument("uniform spec needs 'uniform:lo,hi', got '" + std::string(text) + "'");
    }
    return uniform(parse_double(parts[0], "uniform lo"), parse_double(parts[1], "uniform hi"));
  }
  if (kind == "bernoulli") {
    return bernoulli(parse_double(args, "bernoulli probability"));
  }
  if (kind == "discrete") {
    std::vector<double> values;
    std::vector<double> probs;
    for (const auto& entry : split(args, ';')) {
      const auto pair = split(entry, ',');
      if (pair.size() != 2) {
        throw std::invalid_argument("discrete entry '" + std::string(entry) +
                                    "' must be 'value,probability'");
      }
      values.push_back(parse_double(pair[0], "discrete value"));
      probs.push_back(parse_double(pair[1], "discrete probability"));
    }
    return discrete(std::move(values), std::move(probs));
  }
  throw std::invalid_argument("unknown distribution kind '" + std::string(kind) + "'");
}

std::string DistributionSpec::to_string() const {
  switch (kind_) {
    case Kind::kUniform:
      return "uniform:" + format_double(lo_) + "," + format_double(hi_);
    case Kind::kBernoulli: {
      double zero_prob = 0.0;
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == 0.0) zero_prob = probs_[i];
      }
      return "bernoulli:" + format_double(zero_prob);
    }
    case Kind::kDiscrete: {
      std::string out = "discrete:";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i > 0) out += ';';
        out += format_double(values_[i]) + "," + format_double(probs_[i]);
      }
      return out;
    }
  }
  return {};
}

bool DistributionSpec::degenerate() const {
  if (kind_ == Kind::kUniform) return lo_ == hi_;
  return values_.size() <= 1;
}

double DistributionSpec::min_support() const {
  return kind_ == Kind::kUniform ? lo_ : values_.front();
}

double DistributionSpec::max_support() const {
  return kind_ == Kind::kUniform ? hi_ : values_.back();
}

double DistributionSpec::tail_probability(double threshold) const {
  if (kind_ == Kind::kUniform) {
    if (lo_ == hi_) return threshold <= lo_ ? 1.0 : 0.0;
    if (threshold <= lo_) return 1.0;
    if (threshold >= hi_) return 0.0;
    return (hi_ - threshold) / (hi_ - lo_);
  }
  double tail = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= threshold) tail += probs_[i];
  }
  return tail;
}

double DistributionSpec::sample(std::uint64_t seed, std::uint64_t agent, std::uint64_t good) const {
  const double u = to_unit(mix64(seed, agent, good));
  if (kind_ == Kind::kUniform) {
    return lo_ + u * (hi_ - lo_);
  }
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    cum += probs_[i];
    if (u < cum) return values_[i];
  }
  return values_.back();
}

Margin margin_for(const DistributionSpec& spec, double beta_floor) {
  if (spec.degenerate()) {
    throw MarginUnavailable("distribution " + spec.to_string() +
                            " puts all probability on a single point; no positive margin exists");
  }
  if (!(beta_floor > 0.0 && beta_floor < 1.0)) {
    throw std::invalid_argument("beta_floor must lie in (0, 1)");
  }
  const double mean = spec.mean();

  // Best threshold with tail mass >= beta_floor. Uniform has a closed form;
  // discrete support is enumerated exactly.
  double threshold = 0.0;
  bool found = false;
  if (spec.kind() == DistributionSpec::Kind::kUniform) {
    const double lo = spec.uniform_lo();
    const double hi = spec.uniform_hi();
    threshold = hi - beta_floor * (hi - lo);
    found = threshold > mean;
  } else {
    const auto& support = spec.support();
    for (std::size_t i = 0; i < support.size(); ++i) {
      const double v = support[i];
      if (v > mean && spec.tail_probability(v) + kBetaSlack >= beta_floor) {
        threshold = v;  // support is ascending; keep the largest admissible
        found = true;
      }
    }
  }
  if (!found) {
    throw std::domain_error("beta_floor " + std::to_string(beta_floor) +
                            " is not reachable with a positive margin for " + spec.to_string());
  }

  Margin margin;
  margin.delta = threshold / mean - 1.0;
  // Keep (1+delta)*mean from rounding past the chosen threshold, so the tail
  // at the recomputed level is the tail we certified.
  while ((1.0 + margin.delta) * mean > threshold) {
    margin.delta = std::nextafter(margin.delta, -1.0);
  }
  margin.beta = spec.tail_probability((1.0 + margin.delta) * mean);
  return margin;
}

double chernoff_bound(double epsilon, double expected) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("chernoff_bound epsilon must lie in (0, 1)");
  }
  if (!(expected >= 0.0)) {
    throw std::domain_error("chernoff_bound expected value must be nonnegative");
  }
  return std::exp(-epsilon * epsilon * expected / 3.0);
}

Instance sample_instance(const DistributionSpec& spec, std::size_t agents, std::size_t goods,
                         std::uint64_t seed) {
  std::vector<double> utilities(agents * goods);
  for (std::size_t i = 0; i < agents; ++i) {
    for (std::size_t g = 0; g < goods; ++g) {
      utilities[i * goods + g] = spec.sample(seed, i, g);
    }
  }
  return Instance(agents, goods, std::move(utilities));
}

}  // namespace propfair
