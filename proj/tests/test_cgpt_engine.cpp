#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "esense/cgpt.hpp"
#include "esense/geometry.hpp"
#include "oracles.hpp"

using namespace esense;

namespace {

ShapeSpec circle_spec(double r, double k) {
  ShapeSpec spec;
  spec.kind = ShapeKind::Circle;
  spec.params = {r};
  spec.k1 = k;
  return spec;
}

double rel_frobenius(const CgptMatrix& a, const CgptMatrix& b) {
  return (a - b).norm() / b.norm();
}

}  // namespace

TEST_CASE("disk first-order CGPT") {
  const ConductivityTarget disk =
      ConductivityTarget::from_spec(circle_spec(1.0, 2.0), 256);
  const CgptMatrix m = compute_cgpt(disk, 1);
  const double ref = oracle::disk_cgpt_diagonal(2.0, 1.0, 1);
  CHECK(ref == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK(m.cc(0, 0) == doctest::Approx(ref).epsilon(1e-8));
  CHECK(m.ss(0, 0) == doctest::Approx(ref).epsilon(1e-8));
  CHECK(std::abs(m.cs(0, 0)) < 1e-9);
  CHECK(std::abs(m.sc(0, 0)) < 1e-9);
}

TEST_CASE("disk CGPT to order 3 matches the radial oracle") {
  const ConductivityTarget disk =
      ConductivityTarget::from_spec(circle_spec(1.0, 2.0), 512);
  const CgptMatrix m = compute_cgpt(disk, 3);
  for (int n = 1; n <= 3; ++n) {
    const double ref = oracle::disk_cgpt_diagonal(2.0, 1.0, n);
    CHECK(m.cc(n - 1, n - 1) == doctest::Approx(ref).epsilon(1e-8));
    CHECK(m.ss(n - 1, n - 1) == doctest::Approx(ref).epsilon(1e-8));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(m.cs(i, j)) < 1e-9);
      CHECK(std::abs(m.sc(i, j)) < 1e-9);
      if (i != j) {
        CHECK(std::abs(m.cc(i, j)) < 1e-9);
        CHECK(std::abs(m.ss(i, j)) < 1e-9);
      }
    }
  }
}

TEST_CASE("transmission density on the disk is the analytic cosine") {
  const ConductivityTarget disk =
      ConductivityTarget::from_spec(circle_spec(1.0, 2.0), 256);
  TransmissionSolver solver(disk);
  const auto densities = solver.solve(1, false);
  CHECK(solver.last_residual() < 1e-12);
  // Exterior representation u = h + S[psi] forces psi = 2(k-1)/(k+1) cos t.
  const double coeff = 2.0 * (2.0 - 1.0) / (2.0 + 1.0);
  for (int j = 0; j < disk.outer.size(); ++j) {
    const double t = 2.0 * M_PI * j / disk.outer.size();
    CHECK(std::abs(densities.outer(j) - coeff * std::cos(t)) < 1e-8);
  }
}

TEST_CASE("sine harmonic density is odd on a mirror-symmetric shape") {
  const ConductivityTarget target = ConductivityTarget::from_spec(
      ShapeSpec::standard(ShapeKind::Ellipse), 256);
  TransmissionSolver solver(target);
  const Eigen::VectorXd psi = solver.solve(2, true).outer;
  const int n = target.outer.size();
  for (int j = 1; j < n / 2; ++j)
    CHECK(std::abs(psi(j) + psi(n - j)) < 1e-8);
}

TEST_CASE("coated target with equal phases degenerates to homogeneous") {
  ShapeSpec spec = ShapeSpec::standard(ShapeKind::Bean);
  spec.k1 = 2.0;
  spec.k2 = 2.0;
  spec.coating_ratio = 0.5;
  const ConductivityTarget coated = ConductivityTarget::from_spec(spec, 256);
  TransmissionSolver solver(coated);
  const auto densities = solver.solve(1, false);
  CHECK(densities.inner.cwiseAbs().maxCoeff() < 1e-10);

  ShapeSpec homog = spec;
  homog.k2.reset();
  homog.coating_ratio.reset();
  const CgptMatrix mc = compute_cgpt(coated, 3);
  const CgptMatrix mh = compute_cgpt(
      ConductivityTarget::from_spec(homog, 256), 3);
  CHECK((mc - mh).norm() < 1e-9 * mh.norm());
}

TEST_CASE("coated concentric disks match the two-layer radial oracle") {
  ShapeSpec spec = circle_spec(1.0, 2.0);
  spec.k2 = 4.0;
  spec.coating_ratio = 0.5;
  const ConductivityTarget target = ConductivityTarget::from_spec(spec, 256);
  const CgptMatrix m = compute_cgpt(target, 3);
  for (int n = 1; n <= 3; ++n) {
    const double ref = oracle::coated_disk_cgpt_diagonal(2.0, 4.0, 1.0, 0.5, n);
    CHECK(m.cc(n - 1, n - 1) == doctest::Approx(ref).epsilon(1e-6));
  }
  // Effective-conductivity reduction at first order.
  const double keff = oracle::coated_disk_keff(2.0, 4.0, 0.5);
  CHECK(keff == doctest::Approx(13.0 / 5.5).epsilon(1e-12));
  CHECK(m.cc(0, 0) ==
        doctest::Approx(oracle::disk_cgpt_diagonal(keff, 1.0, 1))
            .epsilon(1e-6));
}

TEST_CASE("cross-formulation equality on disk and ellipse") {
  const ConductivityTarget disk =
      ConductivityTarget::from_spec(circle_spec(1.0, 2.0), 256);
  CHECK(rel_frobenius(compute_cgpt(disk, 3),
                      compute_cgpt_homogeneous(disk, 3)) < 1e-10);
  const ConductivityTarget ell = ConductivityTarget::from_spec(
      ShapeSpec::standard(ShapeKind::Ellipse), 256);
  CHECK(rel_frobenius(compute_cgpt(ell, 2),
                      compute_cgpt_homogeneous(ell, 2)) < 1e-8);
}

TEST_CASE("grid convergence of CGPT entries") {
  for (ShapeKind kind : {ShapeKind::Triangle, ShapeKind::Ellipse}) {
    ShapeSpec spec = ShapeSpec::standard(kind);
    const CgptMatrix coarse =
        compute_cgpt(ConductivityTarget::from_spec(spec, 256), 5);
    const CgptMatrix fine =
        compute_cgpt(ConductivityTarget::from_spec(spec, 512), 5);
    CHECK(rel_frobenius(coarse, fine) < 1e-6);
  }
}

TEST_CASE("complex recombination") {
  const ConductivityTarget disk =
      ConductivityTarget::from_spec(circle_spec(1.0, 2.0), 256);
  const ComplexCgpt n = to_complex(compute_cgpt(disk, 3));
  CHECK(n.N1.cwiseAbs().maxCoeff() < 1e-8);
  for (int i = 0; i < 3; ++i) {
    CHECK(n.N2(i, i).real() > 0.0);
    CHECK(std::abs(n.N2(i, i).imag()) < 1e-8);
  }

  CgptMatrix random = CgptMatrix::zero(3);
  random.cc.setRandom();
  random.cs.setRandom();
  random.sc.setRandom();
  random.ss.setRandom();
  const CgptMatrix back = from_complex(to_complex(random));
  CHECK((back - random).norm() < 1e-14 * random.norm());

  const ComplexCgpt zero = to_complex(CgptMatrix::zero(2));
  CHECK(zero.N1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(zero.N2.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unit conductivity is rejected") {
  CHECK_THROWS_AS(ConductivityTarget::from_spec(circle_spec(1.0, 1.0), 64),
                  std::invalid_argument);
}
