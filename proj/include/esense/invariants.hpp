#pragma once

#include <Eigen/Dense>

#include "esense/cgpt.hpp"

namespace esense {

/// Translation-, rotation- and scale-invariant descriptor matrices derived
/// from the complex CGPTs.
struct DescriptorPair {
  int order = 0;
  Eigen::MatrixXd I1, I2;  // entrywise moduli, nonnegative
  Complex u{0.0, 0.0};     // reduction point used for the translation step
};

/// u = N2_{12} / (2 N2_{11}). Throws when the first-order response vanishes.
Complex reduction_point(const ComplexCgpt& n);

/// J1 = C^{-u} N1 (C^{-u})^T, J2 = conj(C^{-u}) N2 (C^{-u})^T.
struct ReducedCgpt {
  Eigen::MatrixXcd J1, J2;
};
ReducedCgpt translation_reduce(const ComplexCgpt& n, Complex u);

/// S1_{mn} = J1_{mn}/(J2_{mm} J2_{nn})^{1/2}, S2 analogous; I = |S|.
/// Throws when a diagonal J2 entry vanishes.
DescriptorPair shape_descriptors(const ReducedCgpt& j, Complex u);

/// Full chain CGPT -> descriptors, truncated to the requested order.
DescriptorPair descriptors(const CgptMatrix& m, int order);

}  // namespace esense
