#include "esense/boundary_ops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esense {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool same_discretization(const Curve& a, const Curve& b) {
  return &a == &b ||
         (a.size() == b.size() && a.nodes == b.nodes);
}

/// Kress product-rule weights for the kernel log(4 sin^2((t-s)/2)) on a
/// 2n-point periodic grid: R(d) for node offset d = i - j.
Eigen::VectorXd kress_weights(int n_nodes) {
  const int half = n_nodes / 2;
  Eigen::VectorXd r(n_nodes);
  for (int d = 0; d < n_nodes; ++d) {
    const double dt = kTwoPi * d / n_nodes;
    double sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::cos(m * dt) / m;
    r(d) = -2.0 * kTwoPi / n_nodes * sum -
           std::numbers::pi / (half * half) * std::cos(half * dt);
  }
  return r;
}

void check_separation(const Curve& src, const Curve& tgt) {
  const double h =
      std::max(src.perimeter() / src.size(), tgt.perimeter() / tgt.size());
  double d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < tgt.size(); ++i)
    for (int j = 0; j < src.size(); ++j)
      d2 = std::min(d2, (tgt.node(i) - src.node(j)).squaredNorm());
  if (std::sqrt(d2) < 3.0 * h)
    throw std::invalid_argument("curves too close for regular quadrature");
}

}  // namespace

DenseOperator single_layer(const Curve& src, const Curve& tgt) {
  DenseOperator op;
  op.src_curve_id = src.parametrization_id;
  op.tgt_curve_id = tgt.parametrization_id;

  if (!same_discretization(src, tgt)) {
    check_separation(src, tgt);
    op.matrix.resize(tgt.size(), src.size());
    for (int i = 0; i < tgt.size(); ++i)
      for (int j = 0; j < src.size(); ++j)
        op.matrix(i, j) = std::log((tgt.node(i) - src.node(j)).norm()) /
                          kTwoPi * src.weights(j);
    return op;
  }

  const int n = src.size();
  const Eigen::VectorXd r = kress_weights(n);
  op.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double speed_j = src.speed(j);
      double smooth;  // (1/4pi) log(|x_i-x_j|^2 / (4 sin^2((t_i-t_j)/2)))
      if (i == j) {
        smooth = std::log(src.speed(i)) / kTwoPi;
      } else {
        const double dist2 = (src.node(i) - src.node(j)).squaredNorm();
        const double sn = std::sin(std::numbers::pi * (i - j) / n);
        smooth = std::log(dist2 / (4.0 * sn * sn)) / (2.0 * kTwoPi);
      }
      const int d = ((i - j) % n + n) % n;
      op.matrix(i, j) = r(d) / (2.0 * kTwoPi) * speed_j +
                        smooth * kTwoPi / n * speed_j;
    }
  }
  return op;
}

DenseOperator np_adjoint(const Curve& curve) {
  const int n = curve.size();
  DenseOperator op;
  op.src_curve_id = op.tgt_curve_id = curve.parametrization_id;
  op.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        op.matrix(i, i) =
            curve.curvature(i) / (2.0 * kTwoPi) * curve.weights(i);
      } else {
        const Vec2 d = curve.node(i) - curve.node(j);
        op.matrix(i, j) = d.dot(curve.normal(i)) / (kTwoPi * d.squaredNorm()) *
                          curve.weights(j);
      }
    }
  }
  return op;
}

DenseOperator normal_derivative_coupling(const Curve& src, const Curve& tgt) {
  if (same_discretization(src, tgt))
    throw std::invalid_argument(
        "normal_derivative_coupling requires distinct curves");
  check_separation(src, tgt);
  DenseOperator op;
  op.src_curve_id = src.parametrization_id;
  op.tgt_curve_id = tgt.parametrization_id;
  op.matrix.resize(tgt.size(), src.size());
  for (int i = 0; i < tgt.size(); ++i) {
    for (int j = 0; j < src.size(); ++j) {
      const Vec2 d = tgt.node(i) - src.node(j);
      op.matrix(i, j) =
          d.dot(tgt.normal(i)) / (kTwoPi * d.squaredNorm()) * src.weights(j);
    }
  }
  return op;
}

Eigen::VectorXd single_layer_offcurve(const Curve& src,
                                      const Eigen::VectorXd& density,
                                      const Eigen::MatrixX2d& points) {
  Eigen::VectorXd out(points.rows());
  for (int i = 0; i < points.rows(); ++i) {
    double v = 0.0;
    for (int j = 0; j < src.size(); ++j)
      v += std::log((points.row(i).transpose() - src.node(j)).norm()) /
           kTwoPi * src.weights(j) * density(j);
    out(i) = v;
  }
  return out;
}

}  // namespace esense
