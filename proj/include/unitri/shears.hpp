#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "unitri/matrix.hpp"

namespace unitri {

inline constexpr double kShearTolerance = 1e-8;

/// Dense real matrix, row-major.
struct RealMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit RealMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
  static RealMatrix identity(std::size_t size);

  double &operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

RealMatrix operator*(const RealMatrix &x, const RealMatrix &y);
RealMatrix transpose(const RealMatrix &x);
double max_abs_diff(const RealMatrix &x, const RealMatrix &y);
double det3(const RealMatrix &x);

struct EulerAngles {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;

  /// |cos((alpha + gamma) / 2)|
  double sum_cosine() const;
  /// |cos(beta / 2)|
  double half_beta_cosine() const;
  bool near_singular(double tol = kShearTolerance) const;
};

struct RealBlock {
  Side side;
  RealMatrix mat;
};

struct ShearDecomposition {
  std::vector<RealBlock> factors;
  RealMatrix target;
  double max_abs_error = 0;

  RealMatrix product() const;
};

/// Three shears U L U with parameters tan(phi/2), -sin(phi), tan(phi/2).
/// Throws near_singular when |cos(phi/2)| <= tol.
ShearDecomposition paeth2(double phi, double tol = kShearTolerance);

/// Rotation matrix with Euler angles (alpha, beta, gamma).
RealMatrix euler3(const EulerAngles &e);

/// U L U factorisation of euler3(e). Throws near_singular.
ShearDecomposition toffoli_quick3(const EulerAngles &e, double tol = kShearTolerance);

/// max |g^T g - e|.
double orthogonality_residual(const RealMatrix &g);

} // namespace unitri
