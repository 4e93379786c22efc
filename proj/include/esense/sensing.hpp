#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "esense/cgpt.hpp"
#include "esense/geometry.hpp"

namespace esense {

/// Acquisition by a sensor swimming on a circular orbit around the target,
/// carrying an arc of skin receptors and a tangential dipole source.
struct AcquisitionConfig {
  int n_positions = 500;
  int n_receptors = 512;
  double orbit_radius_factor = 1.5;  // orbit radius = factor * diameter(D)
  Vec2 orbit_center = Vec2::Zero();
  Vec2 target_center = Vec2::Zero();  // assumed known
  double arc_half_angle = 0.6;        // receptor arc extent, radians
  double radial_offset = 8.0;         // receptors at orbit radius + offset
  int sim_order = 8;                  // synthesis truncation K_sim
  std::uint64_t seed = 0;

  double orbit_radius(double target_diameter) const {
    return orbit_radius_factor * target_diameter;
  }
};

struct Pose {
  Vec2 source;                  // dipole location (arc center)
  Vec2 dipole;                  // unit moment, tangent to the trajectory
  std::vector<Vec2> receptors;  // equispaced along the skin arc
};

/// Poses equispaced in orbit angle. Throws when the receptor arc would
/// intersect the target's bounding circle.
std::vector<Pose> fish_poses(const AcquisitionConfig& config,
                             double target_diameter);

/// Coefficients a_m of the dipole potential expanded in harmonics about the
/// target center: U(x) = sum_m Re(a_m ((x-z)_complex)^m) near z.
Eigen::VectorXcd source_coefficients(const Vec2& source, const Vec2& dipole,
                                     const Vec2& center, int order);

/// Factored linear model of the acquisition: entry(p, r) of the MSR is
/// s_p^T B^T g_r with B = cgpt_system_matrix(M), S rows = source
/// coefficient pairs, G rows = receiver coefficient pairs.
///
/// MSR columns are indexed by fixed receptor stations: the n_receptors
/// points equispaced on the full circle of radius R + radial_offset that
/// the swimming arc sweeps. Fixing the stations in the target frame is what
/// makes the least-squares model factor exactly into S and G.
struct FactorPair {
  Eigen::MatrixXd S;  // n_positions x 2*order
  Eigen::MatrixXd G;  // n_receptors x 2*order
  int order = 0;
  Vec2 center;
};

FactorPair acquisition_factors(const AcquisitionConfig& config,
                               double target_diameter, int order);

/// Interleaved 2K x 2K block matrix with B[(m,a)][(n,b)] = M^{ab}_{mn},
/// a, b in {cos, sin}.
Eigen::MatrixXd cgpt_system_matrix(const CgptMatrix& m);
CgptMatrix cgpt_from_system_matrix(const Eigen::MatrixXd& b);

struct MsrMatrix {
  Eigen::MatrixXd values;  // n_positions x n_receptors
  AcquisitionConfig config;
  double noise_level = 0.0;
  double target_diameter = 0.0;
};

/// Deterministic forward synthesis from a CGPT at the config's sim order.
MsrMatrix synthesize_msr(const CgptMatrix& m, const AcquisitionConfig& config,
                         double target_diameter);

/// Entrywise i.i.d. Gaussian noise with standard deviation
/// sigma0 * ||MSR||_F / sqrt(n_positions * n_receptors).
MsrMatrix add_noise(const MsrMatrix& msr, double sigma0, std::uint64_t seed);

/// Stream of standard normals, reproducible per seed.
Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::uint64_t seed);

/// Derive a per-trial RNG stream from a base seed and indices.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c);

}  // namespace esense
