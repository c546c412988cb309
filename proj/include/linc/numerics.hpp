#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "linc/core.hpp"

namespace linc {

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

// Default step for a central difference of total order k followed by one
// Richardson level: balances the O(h^4) remainder against eps/h^k roundoff.
// Orders up to two use the 1e-3 rad baseline.
inline double fd_step(int total_order) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(1e-3, std::pow(eps, 1.0 / double(total_order + 4)));
}

namespace detail {

// Second-order central stencil for the k-th derivative: offsets (k/2 - j) h.
inline std::vector<std::pair<double, double>> central_stencil(int k) {
  std::vector<std::pair<double, double>> s;
  for (int j = 0; j <= k; ++j)
    s.emplace_back(0.5 * k - j, ((j % 2) ? -1.0 : 1.0) * binomial(k, j));
  return s;
}

}  // namespace detail

// Mixed partial d^kx d^ky f / dx^kx dy^ky at (x, y) using tensor-product
// central stencils with one Richardson extrapolation level.
template <typename F>
double mixed_derivative(F&& f, double x, double y, int kx, int ky, double h = 0.0) {
  if (kx == 0 && ky == 0) return f(x, y);
  if (h <= 0.0) h = fd_step(kx + ky);
  const auto sx = detail::central_stencil(kx);
  const auto sy = detail::central_stencil(ky);
  auto raw = [&](double step) {
    double acc = 0.0;
    for (auto [ox, wx] : sx)
      for (auto [oy, wy] : sy) acc += wx * wy * f(x + ox * step, y + oy * step);
    return acc / std::pow(step, kx + ky);
  };
  const double coarse = raw(h);
  const double fine = raw(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

template <typename F>
double derivative(F&& f, double x, int k, double h = 0.0) {
  return mixed_derivative([&](double a, double) { return f(a); }, x, 0.0, k, 0, h);
}

// Bisection on a sign-changing bracket.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol, const char* what = "bisect") {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw NoRootError(std::string(what) + ": no sign change in bracket");
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Scalar minimization by golden section followed by Newton polishing on a
// finite-difference derivative.
template <typename F>
double minimize_scalar(F&& f, double lo, double hi, double tol = 1e-12) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300 && (b - a) > 1e-6; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 50; ++it) {
    const double h = 1e-4;
    const double f1 = (f(x + h) - f(x - h)) / (2 * h);
    const double f2 = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    if (f2 <= 0) break;
    const double step = f1 / f2;
    x -= step;
    if (std::abs(step) < tol) break;
  }
  return x;
}

// Linear least squares fit y = c0 + c1 x + c2 x^2; returns (c0, c1, c2).
inline std::array<double, 3> quadratic_fit(const RVec& x, const RVec& y, double* rms = nullptr) {
  RMat A(x.size(), 3);
  for (Index i = 0; i < x.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = x(i);
    A(i, 2) = x(i) * x(i);
  }
  RVec c = A.colPivHouseholderQr().solve(y);
  if (rms) *rms = std::sqrt((A * c - y).squaredNorm() / double(x.size()));
  return {c(0), c(1), c(2)};
}

inline RVec linspace(double a, double b, Index n) {
  if (n == 1) return RVec::Constant(1, a);
  return RVec::LinSpaced(n, a, b);
}

}  // namespace linc
