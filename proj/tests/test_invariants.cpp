#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "esense/cgpt.hpp"
#include "esense/cgpt_algebra.hpp"
#include "esense/geometry.hpp"
#include "esense/invariants.hpp"

using namespace esense;

namespace {

ConductivityTarget disk_target(int n_nodes) {
  ShapeSpec spec;
  spec.kind = ShapeKind::Circle;
  spec.params = {1.0};
  return ConductivityTarget::from_spec(spec, n_nodes);
}

ConductivityTarget coated_disk_target(int n_nodes) {
  ShapeSpec spec;
  spec.kind = ShapeKind::Circle;
  spec.params = {1.0};
  spec.k2 = 4.0;
  spec.coating_ratio = 0.5;
  return ConductivityTarget::from_spec(spec, n_nodes);
}

}  // namespace

TEST_CASE("reduction point of centered and translated targets") {
  const ComplexCgpt disk = to_complex(compute_cgpt(disk_target(256), 3));
  CHECK(std::abs(reduction_point(disk)) < 1e-9);

  const Vec2 z(0.8, -0.3);
  const ComplexCgpt moved = to_complex(
      compute_cgpt(disk_target(256).moved(RigidMotion{z, 0.0, 1.0}), 3));
  CHECK(std::abs(reduction_point(moved) - Complex(z.x(), z.y())) < 1e-7);

  const ComplexCgpt ellipse = to_complex(compute_cgpt(
      ConductivityTarget::from_spec(ShapeSpec::standard(ShapeKind::Ellipse),
                                    256),
      3));
  CHECK(std::abs(reduction_point(ellipse)) < 1e-8);
}

TEST_CASE("translation reduction") {
  const ComplexCgpt n = to_complex(compute_cgpt(
      ConductivityTarget::from_spec(ShapeSpec::standard(ShapeKind::Bean), 256),
      3));
  const ReducedCgpt same = translation_reduce(n, Complex(0.0, 0.0));
  CHECK((same.J1 - n.N1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((same.J2 - n.N2).cwiseAbs().maxCoeff() == 0.0);

  // J of a translated target equals J of the original.
  const Vec2 z(0.5, 0.9);
  const ComplexCgpt moved = to_complex(compute_cgpt(
      ConductivityTarget::from_spec(ShapeSpec::standard(ShapeKind::Bean), 256)
          .moved(RigidMotion{z, 0.0, 1.0}),
      3));
  const ReducedCgpt j0 = translation_reduce(n, reduction_point(n));
  const ReducedCgpt j1 = translation_reduce(moved, reduction_point(moved));
  CHECK((j0.J1 - j1.J1).norm() < 1e-7 * (1.0 + j0.J1.norm()));
  CHECK((j0.J2 - j1.J2).norm() < 1e-7 * j0.J2.norm());

  const ComplexCgpt disk = to_complex(compute_cgpt(disk_target(256), 3));
  const ReducedCgpt jd = translation_reduce(disk, reduction_point(disk));
  CHECK(jd.J1.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("radially symmetric targets give I1 = 0, I2 = identity") {
  for (const ConductivityTarget& target :
       {disk_target(256), coated_disk_target(256)}) {
    const DescriptorPair d = descriptors(compute_cgpt(target, 3), 3);
    CHECK(d.I1.cwiseAbs().maxCoeff() < 1e-8);
    CHECK((d.I2 - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
          1e-8);
  }
}

TEST_CASE("circle and concentric coated circle are indistinguishable") {
  const DescriptorPair a = descriptors(compute_cgpt(disk_target(256), 3), 3);
  const DescriptorPair b =
      descriptors(compute_cgpt(coated_disk_target(256), 3), 3);
  CHECK((a.I1 - b.I1).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((a.I2 - b.I2).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("trivial reduced pair") {
  ReducedCgpt j;
  j.J1 = Eigen::MatrixXcd::Zero(3, 3);
  j.J2 = Eigen::MatrixXcd::Identity(3, 3);
  const DescriptorPair d = shape_descriptors(j, Complex(0.0, 0.0));
  CHECK(d.I1.cwiseAbs().maxCoeff() == 0.0);
  CHECK((d.I2 - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("descriptors are invariant under a scaled rigid motion") {
  const RigidMotion motion{Vec2(-0.2, 0.4), M_PI / 3, 0.5};
  for (ShapeKind kind :
       {ShapeKind::Triangle, ShapeKind::Bean, ShapeKind::Shield}) {
    const ShapeSpec spec = ShapeSpec::standard(kind);
    const DescriptorPair base = descriptors(
        compute_cgpt(ConductivityTarget::from_spec(spec, 256), 4), 2);
    const DescriptorPair moved = descriptors(
        compute_cgpt(ConductivityTarget::from_spec(spec, 256).moved(motion),
                     4),
        2);
    const double diff = std::sqrt((base.I1 - moved.I1).squaredNorm() +
                                  (base.I2 - moved.I2).squaredNorm());
    CHECK(diff < 1e-6);
  }
}

TEST_CASE("I2 diagonal self-normalizes to 1") {
  const DescriptorPair d = descriptors(
      compute_cgpt(ConductivityTarget::from_spec(
                       ShapeSpec::standard(ShapeKind::TriangularShield), 256),
                   4),
      3);
  for (int m = 0; m < 3; ++m) CHECK(d.I2(m, m) == doctest::Approx(1.0));
  CHECK(d.I1.minCoeff() >= 0.0);
  CHECK(d.I2.minCoeff() >= 0.0);
}

TEST_CASE("degenerate CGPT is rejected") {
  CHECK_THROWS_AS(descriptors(CgptMatrix::zero(3), 3), std::invalid_argument);
  CHECK_THROWS_AS(descriptors(compute_cgpt(disk_target(64), 2), 3),
                  std::invalid_argument);
}
