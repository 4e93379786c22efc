#include "esense/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "esense/cgpt_algebra.hpp"

namespace esense {

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a, double rel_threshold,
                               int* rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_threshold * sv(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) {
      inv(i) = 1.0 / sv(i);
      ++r;
    }
  }
  if (rank) *rank = r;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

AcquisitionOperator build_acquisition(const AcquisitionConfig& config,
                                      double target_diameter, int order) {
  if (order < 1 || order > 16)
    throw std::invalid_argument("reconstruction order must be in [1, 16]");
  const FactorPair f = acquisition_factors(config, target_diameter, order);
  AcquisitionOperator op;
  op.S = f.S;
  op.G = f.G;
  op.center = f.center;
  op.order = order;
  op.pinv_S = pseudo_inverse(op.S, 1e-10, &op.rank_S);
  op.pinv_G = pseudo_inverse(op.G, 1e-10, &op.rank_G);
  if (op.rank_S < 2 * order || op.rank_G < 2 * order)
    std::cerr << "warning: rank-deficient acquisition factors (rank S = "
              << op.rank_S << ", rank G = " << op.rank_G << ", want "
              << 2 * order << "); solving in the truncated-SVD sense\n";
  return op;
}

ReconstructionResult reconstruct_cgpt(const MsrMatrix& msr,
                                      const AcquisitionOperator& op) {
  if (msr.values.rows() != op.S.rows() || msr.values.cols() != op.G.rows())
    throw std::invalid_argument("MSR and acquisition dimensions disagree");
  // MSR = S X G^T with X = B^T; least-squares X = pinv(S) MSR pinv(G)^T.
  const Eigen::MatrixXd x = op.pinv_S * msr.values * op.pinv_G.transpose();
  ReconstructionResult result;
  // The factors expand about op.center; report the CGPT in the global frame.
  result.cgpt =
      translate_cgpt(cgpt_from_system_matrix(x.transpose()), op.center);
  const double data_norm = msr.values.norm();
  if (data_norm > 0.0)
    result.residual =
        (op.S * x * op.G.transpose() - msr.values).norm() / data_norm;
  return result;
}

std::vector<double> averaged_reconstruction_errors(
    const ConductivityTarget& target, const AcquisitionConfig& config,
    int recon_order, double sigma0, int trials, std::uint64_t seed) {
  AcquisitionConfig acq = config;
  acq.target_center = target.centroid();
  const double diameter = target.diameter();
  const CgptMatrix truth = compute_cgpt(target, acq.sim_order);
  const MsrMatrix clean = synthesize_msr(truth, acq, diameter);
  const AcquisitionOperator op = build_acquisition(acq, diameter, recon_order);

  CgptMatrix mean = CgptMatrix::zero(recon_order);
  for (int t = 0; t < trials; ++t) {
    MsrMatrix msr = clean;
    if (sigma0 > 0.0)
      msr = add_noise(clean, sigma0, derive_seed(seed, 0, 0, t));
    mean = mean + reconstruct_cgpt(msr, op).cgpt;
  }
  mean = (1.0 / trials) * mean;
  return per_order_errors(mean, truth);
}

std::vector<double> per_order_errors(const CgptMatrix& recon,
                                     const CgptMatrix& truth) {
  const int order = std::min(recon.order, truth.order);
  std::vector<double> errors(order, 0.0);
  for (int k = 1; k <= order; ++k) {
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (int m = 1; m <= k; ++m) {
      for (int n = 1; n <= k; ++n) {
        if (std::max(m, n) != k) continue;
        const double dcc = recon.cc(m - 1, n - 1) - truth.cc(m - 1, n - 1);
        const double dcs = recon.cs(m - 1, n - 1) - truth.cs(m - 1, n - 1);
        const double dsc = recon.sc(m - 1, n - 1) - truth.sc(m - 1, n - 1);
        const double dss = recon.ss(m - 1, n - 1) - truth.ss(m - 1, n - 1);
        diff2 += dcc * dcc + dcs * dcs + dsc * dsc + dss * dss;
        const double tcc = truth.cc(m - 1, n - 1);
        const double tcs = truth.cs(m - 1, n - 1);
        const double tsc = truth.sc(m - 1, n - 1);
        const double tss = truth.ss(m - 1, n - 1);
        ref2 += tcc * tcc + tcs * tcs + tsc * tsc + tss * tss;
      }
    }
    errors[k - 1] = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
  }
  return errors;
}

}  // namespace esense
