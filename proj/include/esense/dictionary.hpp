#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "esense/cgpt.hpp"
#include "esense/geometry.hpp"
#include "esense/invariants.hpp"
#include "esense/sensing.hpp"

namespace esense {

struct DictionaryEntry {
  std::string id;
  ShapeSpec spec;
  CgptMatrix cgpt;             // stored at the build order
  DescriptorPair descriptors;  // stored at the descriptor order
};

/// The ten reference targets, ids 1a-5b: five shapes of unit characteristic
/// size, row a homogeneous with k = 2, row b coated with k1 = 2, k2 = 4 and
/// coating ratio 0.5.
std::vector<std::pair<std::string, ShapeSpec>> standard_dictionary_specs();

std::vector<DictionaryEntry> build_dictionary(
    const std::vector<std::pair<std::string, ShapeSpec>>& specs, int order,
    int n_nodes, int descriptor_order = 2);

struct MatchResult {
  Eigen::VectorXd errors;  // e_n per dictionary entry
  int best = -1;
  std::string best_id;
  double margin = 0.0;  // second-best error minus best error
  bool tie = false;
};

/// e_n = (||I1_n - I1||_F^2 + ||I2_n - I2||_F^2)^{1/2}, argmin selected;
/// ties broken towards the lowest id and flagged.
MatchResult match(const Eigen::MatrixXd& i1, const Eigen::MatrixXd& i2,
                  const std::vector<DictionaryEntry>& dict);

struct ExperimentConfig {
  AcquisitionConfig acquisition;  // sim_order is the synthesis order K_sim
  int recon_order = 5;
  int descriptor_order = 2;
  int n_nodes = 512;
  std::vector<double> sigmas{0.0};
  int trials = 500;
  std::uint64_t seed = 0;
  bool mean_error_rule = false;  // argmin of trial-averaged errors instead
                                 // of per-trial selections
  RigidMotion motion;            // applied to the true target
};

/// One pass of the full pipeline: synthesize at sim_order, corrupt, recover
/// the CGPT at recon_order, reduce to descriptors, match.
MatchResult classify(const std::vector<DictionaryEntry>& dict,
                     const ConductivityTarget& target,
                     const ExperimentConfig& config, double sigma0,
                     std::uint64_t noise_seed);

struct FrequencyRow {
  std::string true_id;
  double sigma0 = 0.0;
  std::string selected_id;
  double frequency = 0.0;
};

/// Monte Carlo identification frequencies for the requested true targets
/// over the configured noise levels. Deterministic per seed; trials may run
/// in parallel (ESENSE_THREADS) with order-independent aggregation.
std::vector<FrequencyRow> run_identification_experiment(
    const std::vector<DictionaryEntry>& dict,
    const std::vector<std::string>& target_ids, const ExperimentConfig& config);

}  // namespace esense
