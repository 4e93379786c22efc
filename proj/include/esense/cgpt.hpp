#pragma once

#include <Eigen/Dense>

#include "esense/geometry.hpp"

namespace esense {

/// Contracted generalized polarization tensors up to a truncation order:
/// the four real blocks indexed by harmonic orders m, n in {1..order}.
struct CgptMatrix {
  int order = 0;
  Eigen::MatrixXd cc, cs, sc, ss;

  static CgptMatrix zero(int order);
  /// Frobenius norm over all four blocks.
  double norm() const;
  CgptMatrix truncated(int new_order) const;
};

CgptMatrix operator-(const CgptMatrix& a, const CgptMatrix& b);
CgptMatrix operator+(const CgptMatrix& a, const CgptMatrix& b);
CgptMatrix operator*(double a, const CgptMatrix& m);

/// Complex recombinations N1 = (cc - ss) + i(cs + sc),
/// N2 = (cc + ss) + i(cs - sc); these carry the clean transform laws.
struct ComplexCgpt {
  int order = 0;
  Eigen::MatrixXcd N1, N2;
};

ComplexCgpt to_complex(const CgptMatrix& m);
CgptMatrix from_complex(const ComplexCgpt& n);

/// Direct solver for the free-space transmission problem of a (possibly
/// coated) piecewise-constant target: the field is represented as the
/// harmonic background plus single-layer potentials on each interface, and
/// flux continuity across the interfaces fixes the densities. The system is
/// assembled and factorized once; each harmonic background is one back-solve.
class TransmissionSolver {
 public:
  explicit TransmissionSolver(const ConductivityTarget& target);

  struct Densities {
    Eigen::VectorXd outer;
    Eigen::VectorXd inner;  // empty when the target is homogeneous
  };

  /// Densities for the background Re/Im((x - center)^n) about the target
  /// centroid. Requires n >= 1.
  Densities solve(int n, bool sine) const;

  Vec2 center() const { return center_; }
  double rcond() const { return rcond_; }
  /// Relative residual of the last solve.
  double last_residual() const { return last_residual_; }

 private:
  const ConductivityTarget& target_;
  Vec2 center_;
  Eigen::MatrixXd system_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double rcond_ = 0.0;
  mutable double last_residual_ = 0.0;
};

/// CGPT of a homogeneous or coated target via the transmission solve,
/// taking harmonic moments of the exterior-representation densities.
/// Backgrounds and moments are evaluated about the target centroid and the
/// result is translated back to the origin frame (exact at fixed order).
CgptMatrix compute_cgpt(const ConductivityTarget& target, int order);

/// Classical single-phase route (lambda I - K*)^{-1}[d/dnu Re/Im(x^n)] with
/// lambda = (k+1)/(2(k-1)); independent cross-check for homogeneous targets.
CgptMatrix compute_cgpt_homogeneous(const ConductivityTarget& target,
                                    int order);

}  // namespace esense
