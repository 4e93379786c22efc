#pragma once

#include <Eigen/Dense>

#include "esense/cgpt.hpp"
#include "esense/geometry.hpp"

namespace esense {

/// Exact binomial coefficient; orders are capped at 16 so the values stay
/// exactly representable.
double binomial(int m, int n);

inline constexpr int kMaxCgptOrder = 16;

/// Lower-triangular transfer matrix C^z with entry (m,n) = binom(m,n) z^{m-n}
/// for 1 <= n <= m <= order, zero above the diagonal.
Eigen::MatrixXcd translation_matrix(Complex z, int order);

/// Diagonal of G^w, m-th entry s^m e^{i m theta}.
Eigen::VectorXcd scaling_rotation_diagonal(double s, double theta, int order);

/// Transform laws for CGPTs under x -> z + s R(theta) x, exact at fixed
/// truncation order.
CgptMatrix translate_cgpt(const CgptMatrix& m, const Vec2& z);
CgptMatrix rotate_cgpt(const CgptMatrix& m, double theta);
CgptMatrix scale_cgpt(const CgptMatrix& m, double s);
CgptMatrix transform_cgpt(const CgptMatrix& m, const RigidMotion& motion);

/// N1 -> C^z G^w N1 G^w (C^z)^T, N2 -> conj(C^z G^w) N2 G^w (C^z)^T.
ComplexCgpt transform_complex(const ComplexCgpt& n, const RigidMotion& motion);

}  // namespace esense
