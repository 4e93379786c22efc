#include "esense/cgpt_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace esense {

double binomial(int m, int n) {
  if (m > kMaxCgptOrder)
    throw std::invalid_argument("CGPT order capped at 16");
  if (n < 0 || n > m) return 0.0;
  // Pascal triangle in exact integers.
  long long v = 1;
  for (int i = 1; i <= n; ++i) v = v * (m - n + i) / i;
  return static_cast<double>(v);
}

Eigen::MatrixXcd translation_matrix(Complex z, int order) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(order, order);
  for (int m = 1; m <= order; ++m) {
    Complex zp(1.0, 0.0);
    for (int n = m; n >= 1; --n) {
      c(m - 1, n - 1) = binomial(m, n) * zp;
      zp *= z;
    }
  }
  return c;
}

Eigen::VectorXcd scaling_rotation_diagonal(double s, double theta, int order) {
  Eigen::VectorXcd g(order);
  const Complex w = s * std::polar(1.0, theta);
  Complex wp(1.0, 0.0);
  for (int m = 1; m <= order; ++m) {
    wp *= w;
    g(m - 1) = wp;
  }
  return g;
}

ComplexCgpt transform_complex(const ComplexCgpt& n,
                              const RigidMotion& motion) {
  if (!(motion.s > 0.0)) throw std::invalid_argument("scale must be positive");
  const Complex z(motion.z.x(), motion.z.y());
  const Eigen::MatrixXcd cz = translation_matrix(z, n.order);
  const Eigen::VectorXcd gw =
      scaling_rotation_diagonal(motion.s, motion.theta, n.order);
  const Eigen::MatrixXcd a = cz * gw.asDiagonal();  // C^z G^w
  const Eigen::MatrixXcd right = gw.asDiagonal() * cz.transpose();
  ComplexCgpt out;
  out.order = n.order;
  out.N1 = a * n.N1 * right;
  out.N2 = a.conjugate() * n.N2 * right;
  return out;
}

CgptMatrix transform_cgpt(const CgptMatrix& m, const RigidMotion& motion) {
  return from_complex(transform_complex(to_complex(m), motion));
}

CgptMatrix translate_cgpt(const CgptMatrix& m, const Vec2& z) {
  return transform_cgpt(m, RigidMotion{z, 0.0, 1.0});
}

CgptMatrix rotate_cgpt(const CgptMatrix& m, double theta) {
  CgptMatrix out = CgptMatrix::zero(m.order);
  for (int mm = 1; mm <= m.order; ++mm) {
    for (int nn = 1; nn <= m.order; ++nn) {
      Eigen::Matrix2d block;
      block << m.cc(mm - 1, nn - 1), m.sc(mm - 1, nn - 1),
          m.cs(mm - 1, nn - 1), m.ss(mm - 1, nn - 1);
      const Eigen::Matrix2d moved = rotation_matrix(nn * theta) * block *
                                    rotation_matrix(mm * theta).transpose();
      out.cc(mm - 1, nn - 1) = moved(0, 0);
      out.sc(mm - 1, nn - 1) = moved(0, 1);
      out.cs(mm - 1, nn - 1) = moved(1, 0);
      out.ss(mm - 1, nn - 1) = moved(1, 1);
    }
  }
  return out;
}

CgptMatrix scale_cgpt(const CgptMatrix& m, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("scale must be positive");
  CgptMatrix out = m;
  for (int mm = 1; mm <= m.order; ++mm) {
    for (int nn = 1; nn <= m.order; ++nn) {
      const double f = std::pow(s, mm + nn);
      out.cc(mm - 1, nn - 1) *= f;
      out.cs(mm - 1, nn - 1) *= f;
      out.sc(mm - 1, nn - 1) *= f;
      out.ss(mm - 1, nn - 1) *= f;
    }
  }
  return out;
}

}  // namespace esense
