#include "esense/sensing.hpp"

#include <cmath>

#include "esense/cgpt_algebra.hpp"
#include <cstdint>
#include <random>
#include <stdexcept>

namespace esense {

namespace {

Complex to_complex(const Vec2& v) { return Complex(v.x(), v.y()); }

void check_clearance(double station_radius, const AcquisitionConfig& config,
                     double target_diameter) {
  const double gap = (config.orbit_center - config.target_center).norm();
  if (station_radius - gap <= 0.5 * target_diameter)
    throw std::invalid_argument(
        "receptor arc intersects the target bounding circle");
}

}  // namespace

std::vector<Pose> fish_poses(const AcquisitionConfig& config,
                             double target_diameter) {
  if (config.n_positions < 1 || config.n_receptors < 2)
    throw std::invalid_argument("acquisition needs >= 1 pose, >= 2 receptors");
  const double orbit = config.orbit_radius(target_diameter);
  const double skin = orbit + config.radial_offset;
  check_clearance(std::min(orbit, skin), config, target_diameter);

  std::vector<Pose> poses(config.n_positions);
  for (int p = 0; p < config.n_positions; ++p) {
    const double phi = 2.0 * M_PI * p / config.n_positions;
    Pose& pose = poses[p];
    pose.source =
        config.orbit_center + orbit * Vec2(std::cos(phi), std::sin(phi));
    pose.dipole = Vec2(-std::sin(phi), std::cos(phi));
    pose.receptors.resize(config.n_receptors);
    for (int r = 0; r < config.n_receptors; ++r) {
      const double delta = -config.arc_half_angle +
                           2.0 * config.arc_half_angle * r /
                               (config.n_receptors - 1);
      pose.receptors[r] =
          config.orbit_center +
          skin * Vec2(std::cos(phi + delta), std::sin(phi + delta));
    }
  }
  return poses;
}

Eigen::VectorXcd source_coefficients(const Vec2& source, const Vec2& dipole,
                                     const Vec2& center, int order) {
  // U(x) = Re(pc / (2 pi (zeta - w0))) = sum_m Re(a_m zeta^m) near the
  // center, with a_m = -pc / (2 pi w0^{m+1}).
  const Complex w0 = to_complex(source) - to_complex(center);
  const Complex pc = to_complex(dipole);
  Eigen::VectorXcd a(order);
  Complex wp = w0 * w0;  // w0^{m+1} starting at m = 1
  for (int m = 1; m <= order; ++m) {
    a(m - 1) = -pc / (2.0 * M_PI * wp);
    wp *= w0;
  }
  return a;
}

FactorPair acquisition_factors(const AcquisitionConfig& config,
                               double target_diameter, int order) {
  const std::vector<Pose> poses = fish_poses(config, target_diameter);
  const double skin =
      config.orbit_radius(target_diameter) + config.radial_offset;

  FactorPair f;
  f.order = order;
  f.center = config.target_center;
  f.S.resize(config.n_positions, 2 * order);
  for (int p = 0; p < config.n_positions; ++p) {
    const Eigen::VectorXcd a = source_coefficients(
        poses[p].source, poses[p].dipole, config.target_center, order);
    for (int m = 1; m <= order; ++m) {
      f.S(p, 2 * (m - 1)) = a(m - 1).real();
      f.S(p, 2 * (m - 1) + 1) = -a(m - 1).imag();
    }
  }

  // Receiver stations fixed in the target frame: the equispaced ring at the
  // skin radius that the swimming arc sweeps. Coefficients
  // b_m = -1 / (2 pi m zeta_r^m).
  f.G.resize(config.n_receptors, 2 * order);
  for (int r = 0; r < config.n_receptors; ++r) {
    const double phi = 2.0 * M_PI * r / config.n_receptors;
    const Vec2 station =
        config.orbit_center + skin * Vec2(std::cos(phi), std::sin(phi));
    const Complex zr = to_complex(station) - to_complex(config.target_center);
    Complex zp = zr;  // zeta_r^m
    for (int m = 1; m <= order; ++m) {
      const Complex b = -1.0 / (2.0 * M_PI * m * zp);
      f.G(r, 2 * (m - 1)) = b.real();
      f.G(r, 2 * (m - 1) + 1) = -b.imag();
      zp *= zr;
    }
  }
  return f;
}

Eigen::MatrixXd cgpt_system_matrix(const CgptMatrix& m) {
  const int k = m.order;
  Eigen::MatrixXd b(2 * k, 2 * k);
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      b(2 * (i - 1), 2 * (j - 1)) = m.cc(i - 1, j - 1);
      b(2 * (i - 1), 2 * (j - 1) + 1) = m.cs(i - 1, j - 1);
      b(2 * (i - 1) + 1, 2 * (j - 1)) = m.sc(i - 1, j - 1);
      b(2 * (i - 1) + 1, 2 * (j - 1) + 1) = m.ss(i - 1, j - 1);
    }
  }
  return b;
}

CgptMatrix cgpt_from_system_matrix(const Eigen::MatrixXd& b) {
  if (b.rows() != b.cols() || b.rows() % 2 != 0)
    throw std::invalid_argument("system matrix must be square of even size");
  const int k = static_cast<int>(b.rows()) / 2;
  CgptMatrix m = CgptMatrix::zero(k);
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      m.cc(i - 1, j - 1) = b(2 * (i - 1), 2 * (j - 1));
      m.cs(i - 1, j - 1) = b(2 * (i - 1), 2 * (j - 1) + 1);
      m.sc(i - 1, j - 1) = b(2 * (i - 1) + 1, 2 * (j - 1));
      m.ss(i - 1, j - 1) = b(2 * (i - 1) + 1, 2 * (j - 1) + 1);
    }
  }
  return m;
}

MsrMatrix synthesize_msr(const CgptMatrix& m, const AcquisitionConfig& config,
                         double target_diameter) {
  const int order = std::min(config.sim_order, m.order);
  const FactorPair f = acquisition_factors(config, target_diameter, order);
  // The factors expand about target_center, so the CGPT must be expressed
  // about the same point; translation is exact at fixed order.
  const CgptMatrix centered =
      translate_cgpt(m, -config.target_center).truncated(order);
  const Eigen::MatrixXd b = cgpt_system_matrix(centered);
  MsrMatrix msr;
  msr.values = f.S * b.transpose() * f.G.transpose();
  msr.config = config;
  msr.target_diameter = target_diameter;
  return msr;
}

MsrMatrix add_noise(const MsrMatrix& msr, double sigma0, std::uint64_t seed) {
  MsrMatrix out = msr;
  const int rows = static_cast<int>(msr.values.rows());
  const int cols = static_cast<int>(msr.values.cols());
  const double sigma = sigma0 * msr.values.norm() /
                       std::sqrt(static_cast<double>(rows) * cols);
  out.values += sigma * gaussian_matrix(rows, cols, seed);
  out.noise_level = sigma0;
  return out;
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  // Box-Muller on top of mt19937_64 keeps the stream identical across
  // standard libraries.
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng]() {
    return ((rng() >> 11) + 0.5) * 0x1p-53;  // in (0, 1)
  };
  Eigen::MatrixXd g(rows, cols);
  double spare = 0.0;
  bool have_spare = false;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (have_spare) {
        g(i, j) = spare;
        have_spare = false;
        continue;
      }
      const double radius = std::sqrt(-2.0 * std::log(uniform()));
      const double angle = 2.0 * M_PI * uniform();
      g(i, j) = radius * std::cos(angle);
      spare = radius * std::sin(angle);
      have_spare = true;
    }
  }
  return g;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  // splitmix64 finalizer, chained over the indices.
  const auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t s = mix(base);
  s = mix(s ^ mix(a + 0x1ULL));
  s = mix(s ^ mix(b + 0x2ULL));
  s = mix(s ^ mix(c + 0x3ULL));
  return s;
}

}  // namespace esense
