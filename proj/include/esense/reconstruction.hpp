#pragma once

#include <Eigen/Dense>
#include <vector>

#include "esense/cgpt.hpp"
#include "esense/sensing.hpp"

namespace esense {

/// Factored linear acquisition model MSR = S * B^T * G^T with
/// B = cgpt_system_matrix(M). Pseudoinverse factors are precomputed so many
/// reconstructions against the same geometry stay cheap.
struct AcquisitionOperator {
  Eigen::MatrixXd S;       // n_positions x 2K
  Eigen::MatrixXd G;       // n_receptors x 2K
  Eigen::MatrixXd pinv_S;  // 2K x n_positions
  Eigen::MatrixXd pinv_G;  // 2K x n_receptors
  Vec2 center;
  int order = 0;
  int rank_S = 0;
  int rank_G = 0;
};

/// Moore-Penrose pseudoinverse with singular values below
/// rel_threshold * sigma_max truncated; rank reported through *rank.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a, double rel_threshold,
                               int* rank = nullptr);

AcquisitionOperator build_acquisition(const AcquisitionConfig& config,
                                      double target_diameter, int order);

struct ReconstructionResult {
  CgptMatrix cgpt;
  double residual = 0.0;  // ||S B^T G^T - MSR||_F / ||MSR||_F
};

/// Least-squares CGPT estimate argmin ||S B^T G^T - MSR||_F via the
/// pseudoinverse factors (equivalent to the vectorized solve when the
/// factors have full column rank).
ReconstructionResult reconstruct_cgpt(const MsrMatrix& msr,
                                      const AcquisitionOperator& op);

/// Relative error per harmonic order: entry k collects the blocks with
/// max(m, n) == k, matching the per-order truncation error.
std::vector<double> per_order_errors(const CgptMatrix& recon,
                                     const CgptMatrix& truth);

/// Synthesize at config.sim_order, corrupt with sigma0 over seeded trials,
/// reconstruct at recon_order, average the reconstructed CGPTs, and report
/// per-order errors against the synthesis-order ground truth.
std::vector<double> averaged_reconstruction_errors(
    const ConductivityTarget& target, const AcquisitionConfig& config,
    int recon_order, double sigma0, int trials, std::uint64_t seed);

}  // namespace esense
