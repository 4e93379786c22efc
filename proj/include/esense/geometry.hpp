#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace esense {

using Vec2 = Eigen::Vector2d;
using Complex = std::complex<double>;

/// Rigid motion with scaling, x -> z + s R(theta) x.
struct RigidMotion {
  Vec2 z = Vec2::Zero();
  double theta = 0.0;
  double s = 1.0;

  Vec2 apply(const Vec2& x) const;
  RigidMotion inverse() const;
};

Eigen::Matrix2d rotation_matrix(double theta);

/// Discretized closed boundary. Nodes sit at equispaced parameter values
/// t_j = 2*pi*j/N of an analytic map, so that plain weighted sums against
/// nodal values are periodic-trapezoid quadrature in arclength.
struct Curve {
  Eigen::MatrixX2d nodes;      // N x 2
  Eigen::MatrixX2d normals;    // outward unit normals, N x 2
  Eigen::VectorXd weights;     // arclength quadrature weights, positive
  Eigen::VectorXd curvature;   // signed curvature (positive = convex, ccw)
  std::string parametrization_id;

  int size() const { return static_cast<int>(nodes.rows()); }
  double perimeter() const { return weights.sum(); }
  /// |x'(t_j)| recovered from the trapezoid weight.
  double speed(int j) const {
    return weights(j) * size() / (2.0 * M_PI);
  }
  Vec2 node(int j) const { return nodes.row(j).transpose(); }
  Vec2 normal(int j) const { return normals.row(j).transpose(); }

  Vec2 centroid() const;  // boundary (arclength) centroid
};

enum class ShapeKind { Ellipse, Triangle, Bean, Shield, TriangularShield, Circle };

std::string to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(const std::string& name);

/// Geometric and material description of a target. Corner shapes are
/// rounded at build time so that all discretized boundaries are analytic.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Circle;
  /// Kind-specific parameters:
  ///   Circle {r}; Ellipse {a, b}; Triangle {circumradius};
  ///   Bean {scale}; Shield {scale}; TriangularShield {circumradius, bulge}.
  std::vector<double> params;
  /// Corner-rounding radius relative to the shape size (corner shapes only).
  double corner_radius = 0.05;

  double k1 = 2.0;                       // outer (or only) conductivity
  std::optional<double> k2;              // inner conductivity when coated
  std::optional<double> coating_ratio;   // inner = homothety of outer

  bool coated() const { return coating_ratio.has_value(); }
  /// Default parameters for a kind, characteristic size of order 1.
  static ShapeSpec standard(ShapeKind kind);
};

struct CurveSet {
  Curve outer;
  std::optional<Curve> inner;
};

/// Discretize the boundary (and inner boundary when coated).
/// Throws std::invalid_argument on bad node counts, self-intersecting
/// parameters, or an inner curve not strictly inside the outer one.
CurveSet build_curves(const ShapeSpec& spec, int n_nodes);

/// Outer boundary only.
Curve build_curve(const ShapeSpec& spec, int n_nodes);

Curve apply_motion(const Curve& curve, const RigidMotion& m);

double curve_diameter(const Curve& curve);

/// Target assembled from a spec: boundaries plus phase conductivities.
struct ConductivityTarget {
  Curve outer;
  std::optional<Curve> inner;
  double k1 = 2.0;
  double k2 = 2.0;  // meaningful only when inner is present

  bool coated() const { return inner.has_value(); }
  Vec2 centroid() const { return outer.centroid(); }
  double diameter() const { return curve_diameter(outer); }

  static ConductivityTarget from_spec(const ShapeSpec& spec, int n_nodes);
  ConductivityTarget moved(const RigidMotion& m) const;
};

}  // namespace esense
