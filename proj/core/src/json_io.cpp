#include "propfair/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace propfair {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

std::size_t require_count(const ordered_json& doc, const char* field) {
  if (!doc.contains(field)) {
    throw std::invalid_argument(std::string("missing field '") + field + "'");
  }
  const auto& value = doc.at(field);
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw std::invalid_argument(std::string("field '") + field +
                                "' must be a nonnegative integer");
  }
  return value.get<std::size_t>();
}

const char* status_name(AllocStatus status) {
  switch (status) {
    case AllocStatus::kSuccess:
      return "success";
    case AllocStatus::kMatchingFailed:
      return "matching_failed";
    case AllocStatus::kInsufficientGroups:
      return "insufficient_groups";
    case AllocStatus::kVerificationFailed:
      return "verification_failed";
  }
  return "unknown";
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot read file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Instance instance_from_json(const std::string& text) {
  const ordered_json doc = parse_document(text);
  if (!doc.is_object()) throw std::invalid_argument("instance document must be a JSON object");
  const std::size_t n = require_count(doc, "n");
  const std::size_t m = require_count(doc, "m");
  if (n == 0) throw std::invalid_argument("field 'n' must be at least 1");
  if (!doc.contains("utilities") || !doc.at("utilities").is_array()) {
    throw std::invalid_argument("field 'utilities' must be an array of rows");
  }
  const auto& rows = doc.at("utilities");
  if (rows.size() != n) {
    throw std::invalid_argument("field 'utilities' has " + std::to_string(rows.size()) +
                                " rows, expected n=" + std::to_string(n));
  }
  std::vector<double> flat;
  flat.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || row.size() != m) {
      throw std::invalid_argument("field 'utilities[" + std::to_string(i) + "]' must be an array "
                                  "of m=" + std::to_string(m) + " numbers");
    }
    for (std::size_t g = 0; g < m; ++g) {
      const auto& cell = row.at(g);
      if (!cell.is_number()) {
        throw std::invalid_argument("field 'utilities[" + std::to_string(i) + "][" +
                                    std::to_string(g) + "]' must be a number");
      }
      const double u = cell.get<double>();
      if (!(u >= 0.0 && u <= 1.0)) {
        throw std::invalid_argument("field 'utilities[" + std::to_string(i) + "][" +
                                    std::to_string(g) + "]' = " + std::to_string(u) +
                                    " outside [0, 1]");
      }
      flat.push_back(u);
    }
  }
  return Instance(n, m, std::move(flat));
}

std::string instance_to_json(const Instance& inst) {
  ordered_json doc;
  doc["n"] = inst.agents();
  doc["m"] = inst.goods();
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const auto row = inst.row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  doc["utilities"] = std::move(rows);
  return doc.dump();
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_text_file(path));
}

Allocation allocation_from_json(const std::string& text) {
  const ordered_json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("owner") || !doc.at("owner").is_array()) {
    throw std::invalid_argument("allocation document needs an array field 'owner'");
  }
  Allocation alloc;
  const auto& owners = doc.at("owner");
  alloc.owner.reserve(owners.size());
  for (std::size_t g = 0; g < owners.size(); ++g) {
    const auto& cell = owners.at(g);
    if (!cell.is_number_integer() || cell.get<long long>() < 0) {
      throw std::invalid_argument("field 'owner[" + std::to_string(g) +
                                  "]' must be a nonnegative agent index");
    }
    alloc.owner.push_back(cell.get<std::size_t>());
  }
  return alloc;
}

std::string allocation_to_json(const Allocation& alloc) {
  ordered_json doc;
  doc["owner"] = alloc.owner;
  return doc.dump();
}

Allocation load_allocation(const std::filesystem::path& path) {
  return allocation_from_json(read_text_file(path));
}

std::string outcome_to_json(const AllocatorOutcome& outcome) {
  ordered_json doc;
  doc["status"] = status_name(outcome.status);
  switch (outcome.status) {
    case AllocStatus::kSuccess:
      doc["allocation"] = ordered_json{{"owner", outcome.allocation->owner}};
      break;
    case AllocStatus::kMatchingFailed:
      doc["failed_block"] = outcome.failed_block;
      break;
    case AllocStatus::kInsufficientGroups:
      doc["groups_found"] = outcome.groups_found;
      doc["groups_required"] = outcome.groups_required;
      break;
    case AllocStatus::kVerificationFailed:
      doc["failed_agent"] = outcome.failed_agent;
      break;
  }
  doc["block_matching_sizes"] = outcome.block_matching_sizes;
  return doc.dump();
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  const ordered_json doc = parse_document(text);
  if (!doc.is_object()) throw std::invalid_argument("config document must be a JSON object");

  ExperimentConfig cfg;
  if (doc.contains("regime")) {
    if (!doc.at("regime").is_string()) {
      throw std::invalid_argument("field 'regime' must be a string like 'multiple:1'");
    }
    cfg.set_regime(doc.at("regime").get<std::string>());
  }
  if (doc.contains("dist")) {
    if (!doc.at("dist").is_string()) {
      throw std::invalid_argument("field 'dist' must be a string like 'uniform:0,1'");
    }
    cfg.dist = DistributionSpec::parse(doc.at("dist").get<std::string>());
  }
  if (doc.contains("n_values")) {
    if (!doc.at("n_values").is_array()) {
      throw std::invalid_argument("field 'n_values' must be an array of agent counts");
    }
    for (const auto& value : doc.at("n_values")) {
      if (!value.is_number_integer() || value.get<long long>() <= 0) {
        throw std::invalid_argument("field 'n_values' entries must be positive integers");
      }
      cfg.n_values.push_back(value.get<std::size_t>());
    }
  }
  if (doc.contains("trials")) cfg.trials = require_count(doc, "trials");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer()) {
      throw std::invalid_argument("field 'seed' must be an integer");
    }
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("oracle_check")) {
    if (!doc.at("oracle_check").is_boolean()) {
      throw std::invalid_argument("field 'oracle_check' must be a boolean");
    }
    cfg.oracle_check = doc.at("oracle_check").get<bool>();
  }
  if (doc.contains("beta_floor")) {
    if (!doc.at("beta_floor").is_number()) {
      throw std::invalid_argument("field 'beta_floor' must be a number");
    }
    cfg.beta_floor = doc.at("beta_floor").get<double>();
  }
  if (doc.contains("delta")) {
    if (!doc.at("delta").is_number()) {
      throw std::invalid_argument("field 'delta' must be a number");
    }
    cfg.delta_override = doc.at("delta").get<double>();
  }
  if (doc.contains("verify")) {
    if (!doc.at("verify").is_boolean()) {
      throw std::invalid_argument("field 'verify' must be a boolean");
    }
    cfg.verify = doc.at("verify").get<bool>();
  }
  if (doc.contains("threads")) {
    if (!doc.at("threads").is_number_integer() || doc.at("threads").get<long long>() < 0) {
      throw std::invalid_argument("field 'threads' must be a nonnegative integer");
    }
    cfg.threads = doc.at("threads").get<unsigned>();
  }
  return cfg;
}

std::string summary_to_json(const ExperimentSummary& summary) {
  ordered_json doc;
  doc["margin"] = ordered_json{{"delta", summary.margin.delta}, {"beta", summary.margin.beta}};
  doc["mean"] = summary.mean;
  ordered_json rows = ordered_json::array();
  for (const ExperimentRow& row : summary.rows) {
    ordered_json r;
    r["n"] = row.n;
    r["m"] = row.m;
    r["trials"] = row.trials;
    r["alloc_success"] = row.alloc_freq;
    r["alloc_ci_lo"] = row.alloc_ci_lo;
    r["alloc_ci_hi"] = row.alloc_ci_hi;
    if (row.oracle_ran) {
      r["exists"] = row.exists_freq;
      r["exists_ci_lo"] = row.exists_ci_lo;
      r["exists_ci_hi"] = row.exists_ci_hi;
    } else {
      r["exists"] = nullptr;
      r["exists_ci_lo"] = nullptr;
      r["exists_ci_hi"] = nullptr;
    }
    r["oracle_skipped"] = row.oracle_skipped;
    r["seed"] = row.seed;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2);
}

}  // namespace propfair
