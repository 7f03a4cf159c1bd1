#include "unitri/shears.hpp"

#include "unitri/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace unitri {

RealMatrix RealMatrix::identity(std::size_t size) {
  RealMatrix m(size);
  for (std::size_t i = 0; i < size; ++i)
    m(i, i) = 1.0;
  return m;
}

RealMatrix operator*(const RealMatrix &x, const RealMatrix &y) {
  if (x.n != y.n)
    throw Error(errc::dimension_mismatch, "real product");
  RealMatrix r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j)
        r(i, j) += x(i, k) * y(k, j);
  return r;
}

RealMatrix transpose(const RealMatrix &x) {
  RealMatrix r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      r(j, i) = x(i, j);
  return r;
}

double max_abs_diff(const RealMatrix &x, const RealMatrix &y) {
  if (x.n != y.n)
    throw Error(errc::dimension_mismatch, "real comparison");
  double m = 0;
  for (std::size_t k = 0; k < x.a.size(); ++k)
    m = std::max(m, std::abs(x.a[k] - y.a[k]));
  return m;
}

double det3(const RealMatrix &x) {
  if (x.n != 3)
    throw Error(errc::dimension_mismatch, "det3 needs a 3x3 matrix");
  return x(0, 0) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)) -
         x(0, 1) * (x(1, 0) * x(2, 2) - x(1, 2) * x(2, 0)) +
         x(0, 2) * (x(1, 0) * x(2, 1) - x(1, 1) * x(2, 0));
}

double orthogonality_residual(const RealMatrix &g) {
  return max_abs_diff(transpose(g) * g, RealMatrix::identity(g.n));
}

double EulerAngles::sum_cosine() const { return std::abs(std::cos((alpha + gamma) / 2)); }

double EulerAngles::half_beta_cosine() const { return std::abs(std::cos(beta / 2)); }

bool EulerAngles::near_singular(double tol) const {
  return sum_cosine() <= tol || half_beta_cosine() <= tol;
}

RealMatrix ShearDecomposition::product() const {
  RealMatrix p = RealMatrix::identity(target.n);
  for (const auto &f : factors)
    p = p * f.mat;
  return p;
}

namespace {

ShearDecomposition finish(std::vector<RealBlock> factors, RealMatrix target) {
  ShearDecomposition d{std::move(factors), std::move(target), 0.0};
  d.max_abs_error = max_abs_diff(d.product(), d.target);
  return d;
}

} // namespace

ShearDecomposition paeth2(double phi, double tol) {
  if (std::abs(std::cos(phi / 2)) <= tol)
    throw Error(errc::near_singular, "|cos(phi/2)| too small");
  const double t = std::tan(phi / 2), s = std::sin(phi);
  RealMatrix u = RealMatrix::identity(2), l = RealMatrix::identity(2);
  u(0, 1) = t;
  l(1, 0) = -s;
  RealMatrix g(2);
  g(0, 0) = std::cos(phi);
  g(0, 1) = s;
  g(1, 0) = -s;
  g(1, 1) = std::cos(phi);
  return finish({{Side::upper, u}, {Side::lower, l}, {Side::upper, u}}, g);
}

RealMatrix euler3(const EulerAngles &e) {
  const double ca = std::cos(e.alpha), sa = std::sin(e.alpha);
  const double cb = std::cos(e.beta), sb = std::sin(e.beta);
  const double cg = std::cos(e.gamma), sg = std::sin(e.gamma);
  RealMatrix g(3);
  g(0, 0) = ca * cb * cg - sa * sg;
  g(0, 1) = -ca * cb * sg - sa * cg;
  g(0, 2) = ca * sb;
  g(1, 0) = sa * cb * cg + ca * sg;
  g(1, 1) = -sa * cb * sg + ca * cg;
  g(1, 2) = sa * sb;
  g(2, 0) = -sb * cg;
  g(2, 1) = sb * sg;
  g(2, 2) = cb;
  return g;
}

ShearDecomposition toffoli_quick3(const EulerAngles &e, double tol) {
  if (e.sum_cosine() <= tol)
    throw Error(errc::near_singular, "|cos((alpha+gamma)/2)| too small");
  if (e.half_beta_cosine() <= tol)
    throw Error(errc::near_singular, "|cos(beta/2)| too small");
  const double a = e.alpha, b = e.beta, g = e.gamma;
  const double half_sum = std::tan((a + g) / 2), half_beta = std::tan(b / 2);
  const double cos_sum = std::cos((a + g) / 2);
  RealMatrix u1 = RealMatrix::identity(3), l = RealMatrix::identity(3),
             u2 = RealMatrix::identity(3);
  u1(0, 1) = -half_sum;
  u1(0, 2) = std::cos(a) * half_beta;
  u1(1, 2) = std::sin(a) * half_beta;
  l(1, 0) = std::sin(a + g);
  l(2, 0) = -std::cos(g) * std::sin(b);
  l(2, 1) = -std::sin((a - g) / 2) / cos_sum * std::sin(b);
  u2(0, 1) = -half_sum;
  u2(0, 2) = std::cos((a - g) / 2) / cos_sum * half_beta;
  u2(1, 2) = -std::sin(g) * half_beta;
  return finish({{Side::upper, u1}, {Side::lower, l}, {Side::upper, u2}}, euler3(e));
}

} // namespace unitri
