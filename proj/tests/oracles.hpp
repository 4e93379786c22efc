#pragma once

#include <Eigen/Dense>

#include "esense/cgpt.hpp"
#include "esense/geometry.hpp"

// Independent reference implementations used only by the test suites. Each
// oracle recomputes a quantity by a route disjoint from the library code
// (closed forms, adaptive quadrature, brute-force linear algebra).
namespace esense::oracle {

// Ellipse circumference by adaptive Simpson integration of the arclength
// integrand sqrt(a^2 sin^2 t + b^2 cos^2 t).
double ellipse_perimeter(double a, double b);

// Diagonal CGPT entry of a homogeneous disk: 2 pi n (k-1)/(k+1) r^{2n}.
double disk_cgpt_diagonal(double k, double r, int n);

// Exterior multipole coefficient D of the two-layer radial solution with
// background r^n cos(n theta): u = r^n cos + D r^{-n} cos outside r1.
double coated_disk_exterior_coeff(double k1, double k2, double r1, double r2,
                                  int n);

// CGPT diagonal of concentric coated disks, -2 pi n D.
double coated_disk_cgpt_diagonal(double k1, double k2, double r1, double r2,
                                 int n);

// Effective homogeneous conductivity reproducing the coated disk's n = 1
// response (outer radius 1, inner radius rho).
double coated_disk_keff(double k1, double k2, double rho);

// Free-space dipole potential p.(x - s) / (2 pi |x - s|^2).
double dipole_potential(const Vec2& x, const Vec2& source, const Vec2& dipole);

// Brute-force least squares for MSR = S X G^T via the vectorized Kronecker
// system; small instances only.
Eigen::MatrixXd kron_least_squares(const Eigen::MatrixXd& s,
                                   const Eigen::MatrixXd& g,
                                   const Eigen::MatrixXd& msr);

// Real-block translation law evaluated as the explicit double sum with
// rotation blocks and binomials (independent of the complex C^z/G^w route).
CgptMatrix translate_double_sum(const CgptMatrix& m, const Vec2& z);

}  // namespace esense::oracle
