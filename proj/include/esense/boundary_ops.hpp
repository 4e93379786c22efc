#pragma once

#include <Eigen/Dense>
#include <string>

#include "esense/geometry.hpp"

namespace esense {

/// Dense Nystrom discretization of a boundary integral operator. The matrix
/// maps nodal density values on the source curve to nodal values on the
/// target curve; quadrature weights are folded into the columns.
struct DenseOperator {
  Eigen::MatrixXd matrix;
  std::string src_curve_id;
  std::string tgt_curve_id;
};

/// Single-layer potential, kernel (1/2pi) log|x-y|. When src and tgt are the
/// same discretization the log singularity is treated with the spectral
/// product rule for log(4 sin^2((t-s)/2)); otherwise plain quadrature is
/// used. Distinct curves closer than a few grid spacings are rejected.
DenseOperator single_layer(const Curve& src, const Curve& tgt);
inline DenseOperator single_layer(const Curve& self) {
  return single_layer(self, self);
}

/// Neumann-Poincare adjoint K*, kernel (1/2pi) <x-y, nu_x>/|x-y|^2 with the
/// smooth curvature limit on the diagonal. Its arclength adjoint K satisfies
/// the Gauss identity K[1] = 1/2 for the outward normal convention.
DenseOperator np_adjoint(const Curve& curve);

/// d/dnu_x S_src[phi](x) for x on a disjoint target curve (smooth kernel).
DenseOperator normal_derivative_coupling(const Curve& src, const Curve& tgt);

/// Evaluate S_src[phi] at arbitrary exterior points (plain quadrature).
Eigen::VectorXd single_layer_offcurve(const Curve& src,
                                      const Eigen::VectorXd& density,
                                      const Eigen::MatrixX2d& points);

}  // namespace esense
