#include "esense/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esense {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Real trigonometric polynomial c0 + sum_k (a_k cos kt + b_k sin kt).
struct TrigSeries {
  double c0 = 0.0;
  std::vector<double> a, b;  // index k-1 holds mode k

  double eval(double t) const {
    double v = c0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      v += a[i] * std::cos(k * t) + b[i] * std::sin(k * t);
    }
    return v;
  }
  double d1(double t) const {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      v += k * (-a[i] * std::sin(k * t) + b[i] * std::cos(k * t));
    }
    return v;
  }
  double d2(double t) const {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      v -= k * k * (a[i] * std::cos(k * t) + b[i] * std::sin(k * t));
    }
    return v;
  }
};

/// Analytic closed-curve map t in [0, 2pi) -> (X(t), Y(t)).
struct TrigMap {
  TrigSeries X, Y;
  std::string id;

  Vec2 pos(double t) const { return {X.eval(t), Y.eval(t)}; }
  Vec2 vel(double t) const { return {X.d1(t), Y.d1(t)}; }
  Vec2 acc(double t) const { return {X.d2(t), Y.d2(t)}; }
};

/// Project samples f(t_j), j = 0..M-1 equispaced, onto modes 0..K and apply a
/// per-mode filter. Direct DFT; sizes here are small.
TrigSeries fit_series(const std::vector<double>& samples, int max_mode,
                      const std::vector<double>& filter) {
  const int m = static_cast<int>(samples.size());
  TrigSeries s;
  s.a.assign(max_mode, 0.0);
  s.b.assign(max_mode, 0.0);
  double mean = 0.0;
  for (double v : samples) mean += v;
  s.c0 = mean / m;
  for (int k = 1; k <= max_mode; ++k) {
    double ca = 0.0, cb = 0.0;
    for (int j = 0; j < m; ++j) {
      const double t = kTwoPi * j / m;
      ca += samples[j] * std::cos(k * t);
      cb += samples[j] * std::sin(k * t);
    }
    s.a[k - 1] = filter[k] * 2.0 * ca / m;
    s.b[k - 1] = filter[k] * 2.0 * cb / m;
  }
  // Drop trailing negligible modes.
  double scale = std::abs(s.c0);
  for (int k = 0; k < max_mode; ++k)
    scale = std::max({scale, std::abs(s.a[k]), std::abs(s.b[k])});
  int last = 0;
  for (int k = 0; k < max_mode; ++k)
    if (std::abs(s.a[k]) > 1e-16 * scale || std::abs(s.b[k]) > 1e-16 * scale)
      last = k + 1;
  s.a.resize(last);
  s.b.resize(last);
  return s;
}

TrigMap fit_map(const std::vector<Vec2>& pts, int max_mode,
                const std::vector<double>& filter, std::string id) {
  std::vector<double> xs(pts.size()), ys(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    xs[j] = pts[j].x();
    ys[j] = pts[j].y();
  }
  TrigMap map;
  map.X = fit_series(xs, max_mode, filter);
  map.Y = fit_series(ys, max_mode, filter);
  map.id = std::move(id);
  return map;
}

double polygon_signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

/// Constant-speed samples along a closed polygon, ccw orientation enforced.
std::vector<Vec2> polygon_samples(std::vector<Vec2> verts, int m) {
  if (polygon_signed_area(verts) < 0.0)
    std::reverse(verts.begin(), verts.end());
  const int nv = static_cast<int>(verts.size());
  std::vector<double> cum(nv + 1, 0.0);
  for (int i = 0; i < nv; ++i)
    cum[i + 1] = cum[i] + (verts[(i + 1) % nv] - verts[i]).norm();
  const double total = cum[nv];
  std::vector<Vec2> out(m);
  int edge = 0;
  for (int j = 0; j < m; ++j) {
    const double s = total * j / m;
    while (edge + 1 < nv && cum[edge + 1] <= s) ++edge;
    const double local = (s - cum[edge]) / (cum[edge + 1] - cum[edge]);
    out[j] = verts[edge] + local * (verts[(edge + 1) % nv] - verts[edge]);
  }
  return out;
}

/// Fourier-smooth a polygon: Gaussian filter of width sigma (in parameter
/// units) rounds the corners while keeping the map analytic.
TrigMap smoothed_polygon(const std::vector<Vec2>& verts, double rounding,
                         std::string id) {
  const int samples = 4096;
  const int max_mode = 400;
  auto pts = polygon_samples(verts, samples);
  double perimeter = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    perimeter += (verts[(i + 1) % verts.size()] - verts[i]).norm();
  const double sigma = kTwoPi * rounding / perimeter;
  std::vector<double> filter(max_mode + 1);
  for (int k = 0; k <= max_mode; ++k)
    filter[k] = std::exp(-0.5 * (sigma * k) * (sigma * k));
  return fit_map(pts, max_mode, filter, std::move(id));
}

/// Curve given in polar form r(theta) with r a short trig polynomial.
TrigMap polar_map(const TrigSeries& radius, std::string id) {
  const int samples = 2048;
  const int max_mode =
      static_cast<int>(std::max(radius.a.size(), radius.b.size())) + 2;
  std::vector<Vec2> pts(samples);
  for (int j = 0; j < samples; ++j) {
    const double t = kTwoPi * j / samples;
    const double r = radius.eval(t);
    pts[j] = {r * std::cos(t), r * std::sin(t)};
  }
  std::vector<double> filter(max_mode + 1, 1.0);
  return fit_map(pts, max_mode, filter, std::move(id));
}

double shape_size(const std::vector<Vec2>& verts) {
  double s = 0.0;
  for (const auto& v : verts) s = std::max(s, v.norm());
  return s;
}

std::vector<Vec2> triangle_vertices(double circumradius) {
  std::vector<Vec2> v;
  for (int i = 0; i < 3; ++i) {
    const double a = std::numbers::pi / 2.0 + i * kTwoPi / 3.0;
    v.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
  }
  return v;
}

// Badge-shaped pentagon, flat top and pointed bottom.
std::vector<Vec2> shield_vertices(double scale) {
  return {Vec2{-0.90, 0.85} * scale, Vec2{0.90, 0.85} * scale,
          Vec2{0.95, -0.10} * scale, Vec2{0.0, -1.00} * scale,
          Vec2{-0.95, -0.10} * scale};
}

// Equilateral triangle with outward-bulged edges: each edge midpoint pushed
// from radius 1/2 to `bulge` (for circumradius 1).
std::vector<Vec2> triangular_shield_vertices(double circumradius,
                                             double bulge) {
  std::vector<Vec2> v;
  for (int i = 0; i < 3; ++i) {
    const double a = std::numbers::pi / 2.0 + i * kTwoPi / 3.0;
    const double am = a + std::numbers::pi / 3.0;  // edge midpoint direction
    v.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
    v.push_back({circumradius * bulge * std::cos(am),
                 circumradius * bulge * std::sin(am)});
  }
  return v;
}

TrigMap bean_map(double scale) {
  // Fixed boundary map: r(theta) = scale * (0.7 + 0.25 cos t + 0.15 sin 2t).
  TrigSeries r;
  r.c0 = 0.7 * scale;
  r.a = {0.25 * scale, 0.0};
  r.b = {0.0, 0.15 * scale};
  return polar_map(r, "bean");
}

TrigMap shape_map(const ShapeSpec& spec) {
  auto p = [&](std::size_t i, double fallback) {
    return i < spec.params.size() ? spec.params[i] : fallback;
  };
  switch (spec.kind) {
    case ShapeKind::Circle: {
      const double r = p(0, 1.0);
      TrigMap m;
      m.X.a = {r};
      m.X.b = {0.0};
      m.Y.a = {0.0};
      m.Y.b = {r};
      m.id = "circle";
      return m;
    }
    case ShapeKind::Ellipse: {
      const double a = p(0, 1.0), b = p(1, 0.5);
      TrigMap m;
      m.X.a = {a};
      m.X.b = {0.0};
      m.Y.a = {0.0};
      m.Y.b = {b};
      m.id = "ellipse";
      return m;
    }
    case ShapeKind::Triangle: {
      auto verts = triangle_vertices(p(0, 1.0));
      return smoothed_polygon(verts, spec.corner_radius * shape_size(verts),
                              "triangle");
    }
    case ShapeKind::Bean:
      return bean_map(p(0, 1.0));
    case ShapeKind::Shield: {
      auto verts = shield_vertices(p(0, 1.0));
      return smoothed_polygon(verts, spec.corner_radius * shape_size(verts),
                              "shield");
    }
    case ShapeKind::TriangularShield: {
      auto verts = triangular_shield_vertices(p(0, 1.0), p(1, 0.62));
      return smoothed_polygon(verts, spec.corner_radius * shape_size(verts),
                              "triangular_shield");
    }
  }
  throw std::invalid_argument("unknown shape kind");
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    const double v =
        (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
    return (v > 0.0) - (v < 0.0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4;
}

void check_simple(const Curve& curve) {
  const int n = curve.size();
  for (int i = 0; i < n; ++i) {
    const Vec2 a = curve.node(i), b = curve.node((i + 1) % n);
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent around the seam
      const Vec2 c = curve.node(j), d = curve.node((j + 1) % n);
      if (segments_intersect(a, b, c, d))
        throw std::invalid_argument(
            "self-intersecting boundary for parametrization '" +
            curve.parametrization_id + "'");
    }
  }
}

bool point_inside(const Curve& curve, const Vec2& p) {
  // Winding by ray casting over the node polygon.
  const int n = curve.size();
  bool inside = false;
  for (int i = 0; i < n; ++i) {
    const Vec2 a = curve.node(i), b = curve.node((i + 1) % n);
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x =
          a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

Curve discretize(const TrigMap& map, int n_nodes) {
  Curve c;
  c.nodes.resize(n_nodes, 2);
  c.normals.resize(n_nodes, 2);
  c.weights.resize(n_nodes);
  c.curvature.resize(n_nodes);
  c.parametrization_id = map.id;
  for (int j = 0; j < n_nodes; ++j) {
    const double t = kTwoPi * j / n_nodes;
    const Vec2 x = map.pos(t), v = map.vel(t), a = map.acc(t);
    const double speed = v.norm();
    if (!(speed > 1e-12))
      throw std::invalid_argument("degenerate parametrization speed");
    c.nodes.row(j) = x.transpose();
    c.normals.row(j) = Vec2(v.y() / speed, -v.x() / speed).transpose();
    c.weights(j) = speed * kTwoPi / n_nodes;
    c.curvature(j) =
        (v.x() * a.y() - v.y() * a.x()) / (speed * speed * speed);
  }
  return c;
}

}  // namespace

Eigen::Matrix2d rotation_matrix(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Vec2 RigidMotion::apply(const Vec2& x) const {
  return z + s * rotation_matrix(theta) * x;
}

RigidMotion RigidMotion::inverse() const {
  RigidMotion inv;
  inv.s = 1.0 / s;
  inv.theta = -theta;
  inv.z = -(rotation_matrix(-theta) * z) / s;
  return inv;
}

Vec2 Curve::centroid() const {
  Vec2 c = Vec2::Zero();
  for (int j = 0; j < size(); ++j) c += weights(j) * node(j);
  return c / perimeter();
}

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Triangle: return "triangle";
    case ShapeKind::Bean: return "bean";
    case ShapeKind::Shield: return "shield";
    case ShapeKind::TriangularShield: return "triangular_shield";
    case ShapeKind::Circle: return "circle";
  }
  return "unknown";
}

ShapeKind shape_kind_from_string(const std::string& name) {
  if (name == "ellipse") return ShapeKind::Ellipse;
  if (name == "triangle") return ShapeKind::Triangle;
  if (name == "bean") return ShapeKind::Bean;
  if (name == "shield") return ShapeKind::Shield;
  if (name == "triangular_shield") return ShapeKind::TriangularShield;
  if (name == "circle") return ShapeKind::Circle;
  throw std::invalid_argument("unknown shape kind '" + name + "'");
}

ShapeSpec ShapeSpec::standard(ShapeKind kind) {
  ShapeSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ShapeKind::Circle: spec.params = {1.0}; break;
    case ShapeKind::Ellipse: spec.params = {1.0, 0.5}; break;
    case ShapeKind::Triangle: spec.params = {1.0}; break;
    case ShapeKind::Bean: spec.params = {1.0}; break;
    case ShapeKind::Shield: spec.params = {1.0}; break;
    case ShapeKind::TriangularShield: spec.params = {1.0, 0.62}; break;
  }
  return spec;
}

CurveSet build_curves(const ShapeSpec& spec, int n_nodes) {
  if (n_nodes < 16 || n_nodes % 2 != 0)
    throw std::invalid_argument("n_nodes must be even and >= 16");
  auto check_conductivity = [](double k) {
    if (!(k > 0.0) || k == 1.0)
      throw std::invalid_argument("conductivity must lie in (0,inf)\\{1}");
  };
  check_conductivity(spec.k1);

  const TrigMap map = shape_map(spec);
  CurveSet set;
  set.outer = discretize(map, n_nodes);
  check_simple(set.outer);

  if (spec.coated()) {
    const double rho = *spec.coating_ratio;
    if (!(rho > 0.0 && rho < 1.0))
      throw std::invalid_argument("coating ratio must lie in (0,1)");
    if (spec.k2) check_conductivity(*spec.k2);
    // Inner boundary: homothety of the outer about the boundary centroid.
    const Vec2 c = set.outer.centroid();
    TrigMap inner = map;
    auto shrink = [&](TrigSeries& s, double center) {
      s.c0 = center + rho * (s.c0 - center);
      for (auto& v : s.a) v *= rho;
      for (auto& v : s.b) v *= rho;
    };
    shrink(inner.X, c.x());
    shrink(inner.Y, c.y());
    inner.id = map.id + "_inner";
    set.inner = discretize(inner, n_nodes);
    check_simple(*set.inner);
    for (int j = 0; j < set.inner->size(); ++j)
      if (!point_inside(set.outer, set.inner->node(j)))
        throw std::invalid_argument("inner curve not strictly inside outer");
  }
  return set;
}

Curve build_curve(const ShapeSpec& spec, int n_nodes) {
  return build_curves(spec, n_nodes).outer;
}

Curve apply_motion(const Curve& curve, const RigidMotion& m) {
  Curve out = curve;
  const Eigen::Matrix2d r = rotation_matrix(m.theta);
  for (int j = 0; j < curve.size(); ++j) {
    out.nodes.row(j) = (m.z + m.s * r * curve.node(j)).transpose();
    out.normals.row(j) = (r * curve.normal(j)).transpose();
  }
  out.weights = m.s * curve.weights;
  out.curvature = curve.curvature / m.s;
  return out;
}

double curve_diameter(const Curve& curve) {
  if (curve.size() < 2)
    throw std::invalid_argument("diameter needs at least two nodes");
  double d2 = 0.0;
  for (int i = 0; i < curve.size(); ++i)
    for (int j = i + 1; j < curve.size(); ++j)
      d2 = std::max(d2, (curve.node(i) - curve.node(j)).squaredNorm());
  return std::sqrt(d2);
}

ConductivityTarget ConductivityTarget::from_spec(const ShapeSpec& spec,
                                                 int n_nodes) {
  CurveSet set = build_curves(spec, n_nodes);
  ConductivityTarget t;
  t.outer = std::move(set.outer);
  t.inner = std::move(set.inner);
  t.k1 = spec.k1;
  t.k2 = spec.k2.value_or(spec.k1);
  return t;
}

ConductivityTarget ConductivityTarget::moved(const RigidMotion& m) const {
  ConductivityTarget t = *this;
  t.outer = apply_motion(outer, m);
  if (inner) t.inner = apply_motion(*inner, m);
  return t;
}

}  // namespace esense
