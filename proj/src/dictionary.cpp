#include "esense/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "esense/reconstruction.hpp"

namespace esense {

namespace {

int thread_count() {
  if (const char* env = std::getenv("ESENSE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

int entry_index(const std::vector<DictionaryEntry>& dict,
                const std::string& id) {
  for (int i = 0; i < static_cast<int>(dict.size()); ++i)
    if (dict[i].id == id) return i;
  throw std::invalid_argument("unknown dictionary id: " + id);
}

}  // namespace

std::vector<std::pair<std::string, ShapeSpec>> standard_dictionary_specs() {
  const ShapeKind kinds[5] = {ShapeKind::Triangle, ShapeKind::Ellipse,
                              ShapeKind::Bean, ShapeKind::Shield,
                              ShapeKind::TriangularShield};
  std::vector<std::pair<std::string, ShapeSpec>> specs;
  for (int i = 0; i < 5; ++i) {
    ShapeSpec a = ShapeSpec::standard(kinds[i]);
    a.k1 = 2.0;
    specs.emplace_back(std::to_string(i + 1) + "a", a);
    ShapeSpec b = a;
    b.k2 = 4.0;
    b.coating_ratio = 0.5;
    specs.emplace_back(std::to_string(i + 1) + "b", b);
  }
  return specs;
}

std::vector<DictionaryEntry> build_dictionary(
    const std::vector<std::pair<std::string, ShapeSpec>>& specs, int order,
    int n_nodes, int descriptor_order) {
  if (order < 2) throw std::invalid_argument("dictionary order must be >= 2");
  std::vector<DictionaryEntry> dict;
  dict.reserve(specs.size());
  for (const auto& [id, spec] : specs) {
    DictionaryEntry entry;
    entry.id = id;
    entry.spec = spec;
    const ConductivityTarget target =
        ConductivityTarget::from_spec(spec, n_nodes);
    entry.cgpt = compute_cgpt(target, order);
    entry.descriptors = descriptors(entry.cgpt, descriptor_order);
    dict.push_back(std::move(entry));
  }
  return dict;
}

MatchResult match(const Eigen::MatrixXd& i1, const Eigen::MatrixXd& i2,
                  const std::vector<DictionaryEntry>& dict) {
  if (dict.empty()) throw std::invalid_argument("empty dictionary");
  MatchResult result;
  result.errors.resize(static_cast<int>(dict.size()));
  for (int n = 0; n < static_cast<int>(dict.size()); ++n) {
    const DescriptorPair& d = dict[n].descriptors;
    if (d.I1.rows() != i1.rows() || d.I2.rows() != i2.rows())
      throw std::invalid_argument("descriptor order mismatch");
    const double e1 = (d.I1 - i1).squaredNorm();
    const double e2 = (d.I2 - i2).squaredNorm();
    result.errors(n) = std::sqrt(e1 + e2);
    if (result.best < 0 || result.errors(n) < result.errors(result.best))
      result.best = n;
  }
  result.best_id = dict[result.best].id;
  double second = -1.0;
  for (int n = 0; n < result.errors.size(); ++n) {
    if (n == result.best) continue;
    if (second < 0.0 || result.errors(n) < second) second = result.errors(n);
  }
  result.margin = second < 0.0 ? 0.0 : second - result.errors(result.best);
  // Entries indistinguishable at solver precision (e.g. radially symmetric
  // pairs) are reported as ties rather than a meaningless argmin.
  if (second >= 0.0)
    result.tie = result.margin <= 1e-8 * (1.0 + result.errors(result.best));
  return result;
}

MatchResult classify(const std::vector<DictionaryEntry>& dict,
                     const ConductivityTarget& target,
                     const ExperimentConfig& config, double sigma0,
                     std::uint64_t noise_seed) {
  AcquisitionConfig acq = config.acquisition;
  acq.target_center = target.centroid();
  const double diameter = target.diameter();
  const CgptMatrix truth = compute_cgpt(target, acq.sim_order);
  MsrMatrix msr = synthesize_msr(truth, acq, diameter);
  if (sigma0 > 0.0) msr = add_noise(msr, sigma0, noise_seed);
  const AcquisitionOperator op =
      build_acquisition(acq, diameter, config.recon_order);
  const ReconstructionResult recon = reconstruct_cgpt(msr, op);
  const DescriptorPair d = descriptors(recon.cgpt, config.descriptor_order);
  return match(d.I1, d.I2, dict);
}

std::vector<FrequencyRow> run_identification_experiment(
    const std::vector<DictionaryEntry>& dict,
    const std::vector<std::string>& target_ids,
    const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<FrequencyRow> table;
  for (const std::string& id : target_ids) {
    const int target_idx = entry_index(dict, id);
    const ConductivityTarget target =
        ConductivityTarget::from_spec(dict[target_idx].spec, config.n_nodes)
            .moved(config.motion);

    // Geometry-dependent factors are shared by every trial.
    AcquisitionConfig acq = config.acquisition;
    acq.target_center = target.centroid();
    const double diameter = target.diameter();
    const CgptMatrix truth = compute_cgpt(target, acq.sim_order);
    const MsrMatrix clean = synthesize_msr(truth, acq, diameter);
    const AcquisitionOperator op =
        build_acquisition(acq, diameter, config.recon_order);

    for (std::size_t si = 0; si < config.sigmas.size(); ++si) {
      const double sigma0 = config.sigmas[si];
      std::vector<long> counts(dict.size(), 0);
      Eigen::VectorXd error_sum = Eigen::VectorXd::Zero(dict.size());

      const auto run_trial = [&](int trial, std::vector<long>& local_counts,
                                 Eigen::VectorXd& local_errors) {
        MsrMatrix msr = clean;
        if (sigma0 > 0.0)
          msr = add_noise(clean, sigma0,
                          derive_seed(config.seed, target_idx, si, trial));
        const ReconstructionResult recon = reconstruct_cgpt(msr, op);
        const DescriptorPair d =
            descriptors(recon.cgpt, config.descriptor_order);
        const MatchResult m = match(d.I1, d.I2, dict);
        ++local_counts[m.best];
        local_errors += m.errors;
      };

      const int threads = std::min(thread_count(), config.trials);
      if (threads <= 1) {
        for (int t = 0; t < config.trials; ++t)
          run_trial(t, counts, error_sum);
      } else {
        std::vector<std::vector<long>> part_counts(
            threads, std::vector<long>(dict.size(), 0));
        std::vector<Eigen::VectorXd> part_errors(
            threads, Eigen::VectorXd::Zero(dict.size()));
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
          pool.emplace_back([&, w]() {
            for (int t = w; t < config.trials; t += threads)
              run_trial(t, part_counts[w], part_errors[w]);
          });
        }
        for (auto& th : pool) th.join();
        for (int w = 0; w < threads; ++w) {
          for (std::size_t n = 0; n < dict.size(); ++n)
            counts[n] += part_counts[w][n];
          error_sum += part_errors[w];
        }
      }

      if (config.mean_error_rule) {
        int best = 0;
        for (int n = 1; n < error_sum.size(); ++n)
          if (error_sum(n) < error_sum(best)) best = n;
        for (std::size_t n = 0; n < dict.size(); ++n)
          table.push_back({id, sigma0, dict[n].id,
                           static_cast<int>(n) == best ? 1.0 : 0.0});
      } else {
        for (std::size_t n = 0; n < dict.size(); ++n)
          table.push_back({id, sigma0, dict[n].id,
                           static_cast<double>(counts[n]) / config.trials});
      }
    }
  }
  return table;
}

}  // namespace esense
