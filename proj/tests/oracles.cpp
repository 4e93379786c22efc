#include "oracles.hpp"

#include <cmath>
#include <functional>

#include "esense/cgpt_algebra.hpp"

namespace esense::oracle {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps) {
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 40);
}

}  // namespace

double ellipse_perimeter(double a, double b) {
  const auto speed = [a, b](double t) {
    const double dx = -a * std::sin(t);
    const double dy = b * std::cos(t);
    return std::sqrt(dx * dx + dy * dy);
  };
  return integrate(speed, 0.0, 2.0 * M_PI, 1e-13);
}

double disk_cgpt_diagonal(double k, double r, int n) {
  return 2.0 * M_PI * n * (k - 1.0) / (k + 1.0) * std::pow(r, 2 * n);
}

double coated_disk_exterior_coeff(double k1, double k2, double r1, double r2,
                                  int n) {
  // Radial solution u = A r^n (r < r2); B r^n + C r^{-n} (r2 < r < r1);
  // r^n + D r^{-n} (r > r1), continuity of u and of the flux k du/dr.
  Eigen::Matrix4d sys = Eigen::Matrix4d::Zero();
  Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
  const auto p = [n](double r) { return std::pow(r, n); };
  const auto q = [n](double r) { return std::pow(r, -n); };
  // u continuity at r2: A r2^n - B r2^n - C r2^{-n} = 0
  sys(0, 0) = p(r2);
  sys(0, 1) = -p(r2);
  sys(0, 2) = -q(r2);
  // flux continuity at r2: k2 A n r2^{n-1} - k1 (B n r2^{n-1} - C n r2^{-n-1})
  sys(1, 0) = k2 * p(r2) / r2;
  sys(1, 1) = -k1 * p(r2) / r2;
  sys(1, 2) = k1 * q(r2) / r2;
  // u continuity at r1: B r1^n + C r1^{-n} - D r1^{-n} = r1^n
  sys(2, 1) = p(r1);
  sys(2, 2) = q(r1);
  sys(2, 3) = -q(r1);
  rhs(2) = p(r1);
  // flux continuity at r1: k1 (B n r1^{n-1} - C n r1^{-n-1}) + D n r1^{-n-1}
  //   = n r1^{n-1}
  sys(3, 1) = k1 * p(r1) / r1;
  sys(3, 2) = -k1 * q(r1) / r1;
  sys(3, 3) = q(r1) / r1;
  rhs(3) = p(r1) / r1;
  const Eigen::Vector4d sol = sys.fullPivLu().solve(rhs);
  return sol(3);
}

double coated_disk_cgpt_diagonal(double k1, double k2, double r1, double r2,
                                 int n) {
  return -2.0 * M_PI * n * coated_disk_exterior_coeff(k1, k2, r1, r2, n);
}

double coated_disk_keff(double k1, double k2, double rho) {
  const double d = coated_disk_exterior_coeff(k1, k2, 1.0, rho, 1);
  return (1.0 - d) / (1.0 + d);
}

double dipole_potential(const Vec2& x, const Vec2& source,
                        const Vec2& dipole) {
  const Vec2 r = x - source;
  return dipole.dot(r) / (2.0 * M_PI * r.squaredNorm());
}

Eigen::MatrixXd kron_least_squares(const Eigen::MatrixXd& s,
                                   const Eigen::MatrixXd& g,
                                   const Eigen::MatrixXd& msr) {
  const Eigen::Index p = s.rows(), r = g.rows();
  const Eigen::Index cs = s.cols(), cg = g.cols();
  Eigen::MatrixXd a(p * r, cs * cg);
  // vec(S X G^T) = (G kron S) vec(X), column-major vec.
  for (Eigen::Index jg = 0; jg < cg; ++jg)
    for (Eigen::Index js = 0; js < cs; ++js)
      for (Eigen::Index ig = 0; ig < r; ++ig)
        for (Eigen::Index is = 0; is < p; ++is)
          a(ig * p + is, jg * cs + js) = g(ig, jg) * s(is, js);
  Eigen::VectorXd b(p * r);
  for (Eigen::Index ig = 0; ig < r; ++ig)
    for (Eigen::Index is = 0; is < p; ++is) b(ig * p + is) = msr(is, ig);
  const Eigen::VectorXd x =
      a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  Eigen::MatrixXd out(cs, cg);
  for (Eigen::Index jg = 0; jg < cg; ++jg)
    for (Eigen::Index js = 0; js < cs; ++js) out(js, jg) = x(jg * cs + js);
  return out;
}

CgptMatrix translate_double_sum(const CgptMatrix& m, const Vec2& z) {
  const double rz = z.norm();
  const double tz = std::atan2(z.y(), z.x());
  CgptMatrix out = CgptMatrix::zero(m.order);
  for (int mm = 1; mm <= m.order; ++mm) {
    for (int nn = 1; nn <= m.order; ++nn) {
      Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
      for (int k = 1; k <= mm; ++k) {
        for (int r = 1; r <= nn; ++r) {
          Eigen::Matrix2d block;
          block << m.cc(k - 1, r - 1), m.sc(k - 1, r - 1),
              m.cs(k - 1, r - 1), m.ss(k - 1, r - 1);
          acc += std::pow(rz, mm - k) * std::pow(rz, nn - r) *
                 binomial(mm, k) * binomial(nn, r) *
                 (rotation_matrix((nn - r) * tz) * block *
                  rotation_matrix((mm - k) * tz).transpose());
        }
      }
      out.cc(mm - 1, nn - 1) = acc(0, 0);
      out.sc(mm - 1, nn - 1) = acc(0, 1);
      out.cs(mm - 1, nn - 1) = acc(1, 0);
      out.ss(mm - 1, nn - 1) = acc(1, 1);
    }
  }
  return out;
}

}  // namespace esense::oracle
