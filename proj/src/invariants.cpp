#include "esense/invariants.hpp"

#include <cmath>
#include <stdexcept>

#include "esense/cgpt_algebra.hpp"

namespace esense {

Complex reduction_point(const ComplexCgpt& n) {
  if (n.order < 2)
    throw std::invalid_argument("reduction point needs order >= 2");
  const Complex n11 = n.N2(0, 0);
  if (std::abs(n11) <= 1e-12 * n.N2.norm())
    throw std::invalid_argument("degenerate target (no first-order response)");
  return n.N2(0, 1) / (2.0 * n11);
}

ReducedCgpt translation_reduce(const ComplexCgpt& n, Complex u) {
  const Eigen::MatrixXcd c = translation_matrix(-u, n.order);
  ReducedCgpt j;
  j.J1 = c * n.N1 * c.transpose();
  j.J2 = c.conjugate() * n.N2 * c.transpose();
  return j;
}

DescriptorPair shape_descriptors(const ReducedCgpt& j, Complex u) {
  const int order = static_cast<int>(j.J2.rows());
  DescriptorPair d;
  d.order = order;
  d.u = u;
  d.I1.resize(order, order);
  d.I2.resize(order, order);
  Eigen::VectorXcd root(order);
  const double scale = j.J2.norm();
  for (int m = 0; m < order; ++m) {
    if (std::abs(j.J2(m, m)) <= 1e-14 * scale)
      throw std::invalid_argument("descriptor undefined at order " +
                                  std::to_string(m + 1));
    root(m) = std::sqrt(j.J2(m, m));  // principal branch; modulus kills it
  }
  for (int m = 0; m < order; ++m) {
    for (int n = 0; n < order; ++n) {
      const Complex denom = root(m) * root(n);
      d.I1(m, n) = std::abs(j.J1(m, n) / denom);
      d.I2(m, n) = std::abs(j.J2(m, n) / denom);
    }
  }
  return d;
}

DescriptorPair descriptors(const CgptMatrix& m, int order) {
  if (order > m.order)
    throw std::invalid_argument("descriptor order exceeds CGPT order");
  // u comes from the first-order entries; the reduction is lower triangular,
  // so truncating first is exact.
  const ComplexCgpt n = to_complex(m.truncated(order));
  const Complex u = reduction_point(n);
  return shape_descriptors(translation_reduce(n, u), u);
}

}  // namespace esense
