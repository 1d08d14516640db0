#pragma once

#include <filesystem>
#include <string>

#include "propfair/allocators.hpp"
#include "propfair/core_model.hpp"
#include "propfair/experiments.hpp"

namespace propfair {

// Instance document: {"n": int, "m": int, "utilities": [[real,...],...]},
// row-major and agent-major. Parse failures throw std::invalid_argument
// naming the offending field.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);
Instance load_instance(const std::filesystem::path& path);

// Allocation document: {"owner": [int,...]}.
Allocation allocation_from_json(const std::string& text);
std::string allocation_to_json(const Allocation& alloc);
Allocation load_allocation(const std::filesystem::path& path);

std::string outcome_to_json(const AllocatorOutcome& outcome);

// Experiment config document; keys mirror the simulate CLI flags:
// regime, dist, n_values, trials, seed, oracle_check, beta_floor, delta,
// verify, threads.
ExperimentConfig experiment_config_from_json(const std::string& text);
std::string summary_to_json(const ExperimentSummary& summary);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace propfair
