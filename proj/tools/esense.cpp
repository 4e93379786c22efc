#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esense/dictionary.hpp"
#include "esense/io.hpp"
#include "esense/reconstruction.hpp"

namespace {

using namespace esense;

ShapeSpec resolve_spec(const std::string& token) {
  for (const auto& [id, spec] : standard_dictionary_specs())
    if (id == token) return spec;
  // Fall back to a shape kind name with the standard parameters.
  ShapeSpec spec = ShapeSpec::standard(shape_kind_from_string(token));
  spec.k1 = 2.0;
  return spec;
}

std::vector<std::string> all_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, spec] : standard_dictionary_specs()) ids.push_back(id);
  return ids;
}

struct CommonOpts {
  int nq = 512;
  int order = 5;
  int sim_order = 8;
  int positions = 500;
  int receptors = 512;
  double arc_half_angle = 0.6;
  double radial_offset = 8.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string dict_path = "dictionary.json";
};

void add_acquisition_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--nq", opts.nq, "boundary quadrature nodes");
  cmd->add_option("--sim-order", opts.sim_order, "synthesis order");
  cmd->add_option("--positions", opts.positions, "source positions");
  cmd->add_option("--receptors", opts.receptors, "receptor count");
  cmd->add_option("--arc", opts.arc_half_angle, "receptor arc half-angle");
  cmd->add_option("--offset", opts.radial_offset, "receptor radial offset");
  cmd->add_option("--seed", opts.seed, "RNG seed");
}

AcquisitionConfig make_acquisition(const CommonOpts& opts) {
  AcquisitionConfig acq;
  acq.n_positions = opts.positions;
  acq.n_receptors = opts.receptors;
  acq.arc_half_angle = opts.arc_half_angle;
  acq.radial_offset = opts.radial_offset;
  acq.sim_order = opts.sim_order;
  acq.seed = opts.seed;
  return acq;
}

int cmd_build_dict(const CommonOpts& opts, int descriptor_order) {
  const auto dict = build_dictionary(standard_dictionary_specs(), opts.order,
                                     opts.nq, descriptor_order);
  const std::string path = opts.out.empty() ? opts.dict_path : opts.out;
  save_dictionary(dict, path);
  std::cerr << "wrote " << dict.size() << " entries (order " << opts.order
            << ", descriptor order " << descriptor_order << ", nq " << opts.nq
            << ") to " << path << "\n";
  return 0;
}

int cmd_cgpt(const CommonOpts& opts, const std::vector<std::string>& shapes) {
  std::string out = "{\n";
  bool first = true;
  for (const std::string& token : shapes) {
    const ConductivityTarget target =
        ConductivityTarget::from_spec(resolve_spec(token), opts.nq);
    const CgptMatrix m = compute_cgpt(target, opts.order);
    if (!first) out += ",\n";
    first = false;
    out += "\"" + token + "\": " + to_json_string(m);
  }
  out += "\n}\n";
  if (opts.out.empty())
    std::cout << out;
  else
    write_file(opts.out, out);
  return 0;
}

int cmd_simulate(const CommonOpts& opts, const std::string& shape,
                 double sigma0) {
  const ConductivityTarget target =
      ConductivityTarget::from_spec(resolve_spec(shape), opts.nq);
  AcquisitionConfig acq = make_acquisition(opts);
  acq.target_center = target.centroid();
  const CgptMatrix truth = compute_cgpt(target, acq.sim_order);
  MsrMatrix msr = synthesize_msr(truth, acq, target.diameter());
  if (sigma0 > 0.0) msr = add_noise(msr, sigma0, opts.seed);
  const std::string prefix = opts.out.empty() ? shape : opts.out;
  write_matrix_csv(msr.values, prefix + "_msr.csv");
  write_file(prefix + "_config.json", acquisition_config_json(acq) + "\n");
  std::cerr << "wrote " << msr.values.rows() << "x" << msr.values.cols()
            << " MSR (sigma0 " << sigma0 << ", seed " << opts.seed << ") to "
            << prefix << "_msr.csv\n";
  return 0;
}

int cmd_reconstruct(const CommonOpts& opts, const std::string& msr_path,
                    const std::string& config_path, const std::string& shape) {
  const AcquisitionConfig acq =
      acquisition_config_from_json(read_file(config_path));
  MsrMatrix msr;
  msr.values = read_matrix_csv(msr_path);
  msr.config = acq;

  std::optional<ConductivityTarget> truth_target;
  double diameter = 0.0;
  if (!shape.empty()) {
    truth_target = ConductivityTarget::from_spec(resolve_spec(shape), opts.nq);
    diameter = truth_target->diameter();
  } else {
    // Recover the orbit scale the sidecar was built with.
    diameter = 1.0;
  }
  const AcquisitionOperator op = build_acquisition(acq, diameter, opts.order);
  const ReconstructionResult result = reconstruct_cgpt(msr, op);
  std::cerr << "residual " << result.residual << ", factor ranks "
            << op.rank_S << "/" << op.rank_G << "\n";
  if (truth_target) {
    const CgptMatrix truth = compute_cgpt(*truth_target, acq.sim_order);
    const auto errors = per_order_errors(result.cgpt, truth);
    for (std::size_t k = 0; k < errors.size(); ++k)
      std::cerr << "order " << (k + 1) << " relative error " << errors[k]
                << "\n";
  }
  const std::string text = to_json_string(result.cgpt) + "\n";
  if (opts.out.empty())
    std::cout << text;
  else
    write_file(opts.out, text);
  return 0;
}

int cmd_match(const CommonOpts& opts, const std::string& cgpt_path,
              int descriptor_order) {
  const auto dict = load_dictionary(opts.dict_path);
  const CgptMatrix m = cgpt_from_json(read_file(cgpt_path));
  const DescriptorPair d = descriptors(m, descriptor_order);
  const MatchResult result = match(d.I1, d.I2, dict);
  for (int n = 0; n < result.errors.size(); ++n)
    std::cout << dict[n].id << " " << format_double(result.errors(n)) << "\n";
  std::cout << "best " << result.best_id << " margin "
            << format_double(result.margin) << (result.tie ? " (tie)" : "")
            << "\n";
  return 0;
}

int cmd_experiment(const CommonOpts& opts, std::vector<std::string> targets,
                   const std::vector<double>& sigmas, int trials,
                   bool mean_error) {
  const auto dict = load_dictionary(opts.dict_path);
  if (targets.empty()) targets = all_ids();

  ExperimentConfig config;
  config.acquisition = make_acquisition(opts);
  config.recon_order = opts.order;
  config.descriptor_order = dict.front().descriptors.order;
  config.n_nodes = opts.nq;
  config.sigmas = sigmas;
  config.trials = trials;
  config.seed = opts.seed;
  config.mean_error_rule = mean_error;

  const auto table = run_identification_experiment(dict, targets, config);
  if (!opts.out.empty()) write_frequency_csv(table, opts.out);
  for (const FrequencyRow& row : table)
    if (row.true_id == row.selected_id)
      std::cout << "target " << row.true_id << " sigma0 " << row.sigma0
                << " identification probability " << row.frequency << "\n";
  return 0;
}

int cmd_robustness(const CommonOpts& opts, const std::string& target_id,
                   const std::vector<double>& sigmas, int trials) {
  const ConductivityTarget target =
      ConductivityTarget::from_spec(resolve_spec(target_id), opts.nq);
  const AcquisitionConfig acq = make_acquisition(opts);
  bool first = true;
  for (double sigma0 : sigmas) {
    const auto errors = averaged_reconstruction_errors(
        target, acq, opts.order, sigma0, sigma0 > 0.0 ? trials : 1, opts.seed);
    if (!opts.out.empty())
      write_error_csv(errors, sigma0, sigma0 > 0.0 ? trials : 1, opts.out,
                      !first);
    first = false;
    std::cout << "sigma0 " << sigma0 << ":";
    for (double e : errors) std::cout << " " << format_double(e);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electro-sensing CGPT toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<std::string> shapes;
  std::vector<std::string> targets;
  std::vector<double> sigmas;
  std::string msr_path, config_path, cgpt_path, shape, target_id = "1b";
  int descriptor_order = 2;
  int trials = 500;
  bool mean_error = false;

  CLI::App* build = app.add_subcommand("build-dict", "build the dictionary");
  build->add_option("--nq", opts.nq);
  build->add_option("--order", opts.order);
  build->add_option("--descriptor-order", descriptor_order);
  build->add_option("--out", opts.out);
  build->add_option("--dict", opts.dict_path);

  CLI::App* cgpt = app.add_subcommand("cgpt", "compute CGPTs");
  cgpt->add_option("--shapes", shapes)->required();
  cgpt->add_option("--nq", opts.nq);
  cgpt->add_option("--order", opts.order);
  cgpt->add_option("--out", opts.out);

  CLI::App* simulate = app.add_subcommand("simulate", "synthesize an MSR");
  simulate->add_option("--shapes", shape)->required();
  simulate->add_option("--sigma", sigmas);
  simulate->add_option("--out", opts.out);
  add_acquisition_flags(simulate, opts);

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "recover a CGPT");
  reconstruct->add_option("--msr", msr_path)->required();
  reconstruct->add_option("--config", config_path)->required();
  reconstruct->add_option("--order", opts.order);
  reconstruct->add_option("--shapes", shape);
  reconstruct->add_option("--nq", opts.nq);
  reconstruct->add_option("--out", opts.out);

  CLI::App* match_cmd = app.add_subcommand("match", "match a CGPT");
  match_cmd->add_option("--cgpt", cgpt_path)->required();
  match_cmd->add_option("--dict", opts.dict_path);
  match_cmd->add_option("--descriptor-order", descriptor_order);

  CLI::App* experiment = app.add_subcommand("experiment", "identification MC");
  experiment->add_option("--dict", opts.dict_path);
  experiment->add_option("--target,--targets", targets);
  experiment->add_option("--sigma", sigmas);
  experiment->add_option("--trials", trials);
  experiment->add_option("--order", opts.order);
  experiment->add_option("--out", opts.out);
  experiment->add_flag("--mean-error", mean_error);
  add_acquisition_flags(experiment, opts);

  CLI::App* robustness = app.add_subcommand("robustness", "per-order errors");
  robustness->add_option("--target", target_id);
  robustness->add_option("--sigma", sigmas);
  robustness->add_option("--trials", trials);
  robustness->add_option("--order", opts.order);
  robustness->add_option("--out", opts.out);
  add_acquisition_flags(robustness, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build_dict(opts, descriptor_order);
    if (cgpt->parsed()) return cmd_cgpt(opts, shapes);
    if (simulate->parsed())
      return cmd_simulate(opts, shape, sigmas.empty() ? 0.0 : sigmas[0]);
    if (reconstruct->parsed())
      return cmd_reconstruct(opts, msr_path, config_path, shape);
    if (match_cmd->parsed())
      return cmd_match(opts, cgpt_path, descriptor_order);
    if (experiment->parsed())
      return cmd_experiment(opts, targets,
                            sigmas.empty() ? std::vector<double>{0.1} : sigmas,
                            trials, mean_error);
    if (robustness->parsed())
      return cmd_robustness(
          opts, target_id,
          sigmas.empty() ? std::vector<double>{0.0, 0.2} : sigmas, trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
