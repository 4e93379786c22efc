#include "esense/cgpt.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "esense/boundary_ops.hpp"
#include "esense/cgpt_algebra.hpp"

namespace esense {

CgptMatrix CgptMatrix::zero(int order) {
  CgptMatrix m;
  m.order = order;
  m.cc = Eigen::MatrixXd::Zero(order, order);
  m.cs = m.cc;
  m.sc = m.cc;
  m.ss = m.cc;
  return m;
}

double CgptMatrix::norm() const {
  return std::sqrt(cc.squaredNorm() + cs.squaredNorm() + sc.squaredNorm() +
                   ss.squaredNorm());
}

CgptMatrix CgptMatrix::truncated(int new_order) const {
  if (new_order > order)
    throw std::invalid_argument("cannot truncate to a larger order");
  CgptMatrix m;
  m.order = new_order;
  m.cc = cc.topLeftCorner(new_order, new_order);
  m.cs = cs.topLeftCorner(new_order, new_order);
  m.sc = sc.topLeftCorner(new_order, new_order);
  m.ss = ss.topLeftCorner(new_order, new_order);
  return m;
}

CgptMatrix operator-(const CgptMatrix& a, const CgptMatrix& b) {
  CgptMatrix m = a;
  m.cc -= b.cc;
  m.cs -= b.cs;
  m.sc -= b.sc;
  m.ss -= b.ss;
  return m;
}

CgptMatrix operator+(const CgptMatrix& a, const CgptMatrix& b) {
  CgptMatrix m = a;
  m.cc += b.cc;
  m.cs += b.cs;
  m.sc += b.sc;
  m.ss += b.ss;
  return m;
}

CgptMatrix operator*(double a, const CgptMatrix& m) {
  CgptMatrix out = m;
  out.cc *= a;
  out.cs *= a;
  out.sc *= a;
  out.ss *= a;
  return out;
}

ComplexCgpt to_complex(const CgptMatrix& m) {
  ComplexCgpt n;
  n.order = m.order;
  const Complex i(0.0, 1.0);
  n.N1 = (m.cc - m.ss).cast<Complex>() + i * (m.cs + m.sc).cast<Complex>();
  n.N2 = (m.cc + m.ss).cast<Complex>() + i * (m.cs - m.sc).cast<Complex>();
  return n;
}

CgptMatrix from_complex(const ComplexCgpt& n) {
  CgptMatrix m;
  m.order = n.order;
  m.cc = 0.5 * (n.N1.real() + n.N2.real());
  m.ss = 0.5 * (n.N2.real() - n.N1.real());
  m.cs = 0.5 * (n.N1.imag() + n.N2.imag());
  m.sc = 0.5 * (n.N1.imag() - n.N2.imag());
  return m;
}

namespace {

/// Nodal values of d/dnu Re((x-c)^n) and d/dnu Im((x-c)^n) on a curve.
struct HarmonicTraces {
  Eigen::VectorXd dcos_dnu, dsin_dnu;
};

HarmonicTraces harmonic_normal_derivative(const Curve& curve, const Vec2& c,
                                          int n) {
  HarmonicTraces h;
  h.dcos_dnu.resize(curve.size());
  h.dsin_dnu.resize(curve.size());
  for (int j = 0; j < curve.size(); ++j) {
    const Complex zeta(curve.node(j).x() - c.x(), curve.node(j).y() - c.y());
    const Complex p = std::pow(zeta, n - 1);
    const Vec2 nu = curve.normal(j);
    // grad Re(zeta^n) = n (Re p, -Im p); grad Im(zeta^n) = n (Im p, Re p)
    h.dcos_dnu(j) = n * (p.real() * nu.x() - p.imag() * nu.y());
    h.dsin_dnu(j) = n * (p.imag() * nu.x() + p.real() * nu.y());
  }
  return h;
}

/// Weighted moment sum_j Re/Im((x_j-c)^m) rho_j w_j over one curve.
void accumulate_moments(const Curve& curve, const Vec2& c, int order,
                        const Eigen::VectorXd& rho_cos,
                        const Eigen::VectorXd& rho_sin, int n, CgptMatrix* m) {
  for (int j = 0; j < curve.size(); ++j) {
    const Complex zeta(curve.node(j).x() - c.x(), curve.node(j).y() - c.y());
    Complex p = zeta;
    for (int mm = 1; mm <= order; ++mm) {
      const double w = curve.weights(j);
      m->cc(mm - 1, n - 1) += p.real() * rho_cos(j) * w;
      m->sc(mm - 1, n - 1) += p.imag() * rho_cos(j) * w;
      m->cs(mm - 1, n - 1) += p.real() * rho_sin(j) * w;
      m->ss(mm - 1, n - 1) += p.imag() * rho_sin(j) * w;
      p *= zeta;
    }
  }
}

void warn_conditioning(double rcond) {
  if (rcond > 0.0 && rcond < 1e-10)
    std::cerr << "esense: transmission system condition number ~ "
              << 1.0 / rcond << " exceeds 1e10\n";
}

}  // namespace

TransmissionSolver::TransmissionSolver(const ConductivityTarget& target)
    : target_(target), center_(target.centroid()) {
  if (target.k1 == 1.0)
    throw std::invalid_argument("invalid contrast: outer conductivity is 1");
  const double k1 = target.k1;
  const int n1 = target.outer.size();

  if (!target.coated()) {
    const DenseOperator kstar = np_adjoint(target.outer);
    system_ = (1.0 + k1) / 2.0 * Eigen::MatrixXd::Identity(n1, n1) +
              (1.0 - k1) * kstar.matrix;
  } else {
    const Curve& inner = *target.inner;
    const double k2 = target.k2;
    const int n2 = inner.size();
    const DenseOperator k1star = np_adjoint(target.outer);
    const DenseOperator k2star = np_adjoint(inner);
    const DenseOperator d_in_to_out =
        normal_derivative_coupling(inner, target.outer);
    const DenseOperator d_out_to_in =
        normal_derivative_coupling(target.outer, inner);

    system_.setZero(n1 + n2, n1 + n2);
    system_.topLeftCorner(n1, n1) =
        (1.0 + k1) / 2.0 * Eigen::MatrixXd::Identity(n1, n1) +
        (1.0 - k1) * k1star.matrix;
    system_.topRightCorner(n1, n2) = (1.0 - k1) * d_in_to_out.matrix;
    system_.bottomLeftCorner(n2, n1) = (k1 - k2) * d_out_to_in.matrix;
    system_.bottomRightCorner(n2, n2) =
        (k1 + k2) / 2.0 * Eigen::MatrixXd::Identity(n2, n2) +
        (k1 - k2) * k2star.matrix;
  }
  lu_.compute(system_);
  rcond_ = lu_.rcond();
  warn_conditioning(rcond_);
}

TransmissionSolver::Densities TransmissionSolver::solve(int n,
                                                        bool sine) const {
  if (n < 1) throw std::invalid_argument("harmonic order must be >= 1");
  const int n1 = target_.outer.size();
  Eigen::VectorXd rhs(system_.rows());
  const HarmonicTraces outer_tr =
      harmonic_normal_derivative(target_.outer, center_, n);
  rhs.head(n1) =
      (target_.k1 - 1.0) * (sine ? outer_tr.dsin_dnu : outer_tr.dcos_dnu);
  if (target_.coated()) {
    const HarmonicTraces inner_tr =
        harmonic_normal_derivative(*target_.inner, center_, n);
    rhs.tail(target_.inner->size()) =
        (target_.k2 - target_.k1) *
        (sine ? inner_tr.dsin_dnu : inner_tr.dcos_dnu);
  }
  const Eigen::VectorXd sol = lu_.solve(rhs);
  const double rhs_norm = rhs.norm();
  last_residual_ =
      rhs_norm > 0.0 ? (system_ * sol - rhs).norm() / rhs_norm : 0.0;

  Densities d;
  d.outer = sol.head(n1);
  if (target_.coated()) d.inner = sol.tail(target_.inner->size());
  return d;
}

CgptMatrix compute_cgpt(const ConductivityTarget& target, int order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const TransmissionSolver solver(target);
  const Vec2 c = solver.center();
  CgptMatrix m = CgptMatrix::zero(order);
  for (int n = 1; n <= order; ++n) {
    const auto dc = solver.solve(n, /*sine=*/false);
    const auto ds = solver.solve(n, /*sine=*/true);
    accumulate_moments(target.outer, c, order, dc.outer, ds.outer, n, &m);
    if (target.coated())
      accumulate_moments(*target.inner, c, order, dc.inner, ds.inner, n, &m);
  }
  return translate_cgpt(m, c);
}

CgptMatrix compute_cgpt_homogeneous(const ConductivityTarget& target,
                                    int order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (target.coated())
    throw std::invalid_argument("homogeneous route requires a single phase");
  const double k = target.k1;
  if (std::abs(k - 1.0) < 1e-12)
    throw std::invalid_argument("invalid contrast: conductivity is 1");
  const double lambda = (k + 1.0) / (2.0 * (k - 1.0));
  const int n_nodes = target.outer.size();
  const DenseOperator kstar = np_adjoint(target.outer);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(
      lambda * Eigen::MatrixXd::Identity(n_nodes, n_nodes) - kstar.matrix);
  warn_conditioning(lu.rcond());

  const Vec2 c = target.centroid();
  CgptMatrix m = CgptMatrix::zero(order);
  for (int n = 1; n <= order; ++n) {
    const HarmonicTraces tr = harmonic_normal_derivative(target.outer, c, n);
    const Eigen::VectorXd psi_c = lu.solve(tr.dcos_dnu);
    const Eigen::VectorXd psi_s = lu.solve(tr.dsin_dnu);
    accumulate_moments(target.outer, c, order, psi_c, psi_s, n, &m);
  }
  return translate_cgpt(m, c);
}

}  // namespace esense
