#pragma once

#include <cmath>
#include <vector>

#include "linc/core.hpp"
#include "linc/numerics.hpp"

namespace linc {

// Truncated Taylor series c_0 + c_1 s + ... + c_K s^K about a fixed point.
class Jet {
 public:
  explicit Jet(int order, double value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

  static Jet variable(int order, double at) {
    Jet j(order, at);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return int(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  double derivative(int k) const { return c_[k] * factorial(k); }

  Jet operator+(const Jet& o) const {
    Jet r(*this);
    for (int k = 0; k <= order(); ++k) r.c_[k] += o.c_[k];
    return r;
  }
  Jet operator-(const Jet& o) const {
    Jet r(*this);
    for (int k = 0; k <= order(); ++k) r.c_[k] -= o.c_[k];
    return r;
  }
  Jet operator*(const Jet& o) const {
    Jet r(order());
    for (int i = 0; i <= order(); ++i)
      for (int j = 0; i + j <= order(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    return r;
  }
  Jet operator*(double s) const {
    Jet r(*this);
    for (auto& v : r.c_) v *= s;
    return r;
  }
  Jet operator+(double s) const {
    Jet r(*this);
    r.c_[0] += s;
    return r;
  }

  // Composition g(h) where h is this series and g is given by its
  // derivatives at h(0): gd[k] = g^{(k)}(h_0).
  Jet compose_outer(const std::vector<double>& gd) const {
    Jet dh(*this);
    dh.c_[0] = 0.0;
    Jet r(order(), 0.0), p(order(), 1.0);
    for (int k = 0; k <= order(); ++k) {
      r = r + p * (gd[k] / factorial(k));
      p = p * dh;
    }
    return r;
  }

  // Series of the inverse function: given y(s) = c0 + c1 s + ..., returns
  // s(t) with y(s(t)) = c0 + t. Requires c1 != 0.
  Jet revert() const {
    if (c_[1] == 0.0) throw ContractViolation("Jet::revert: zero linear coefficient");
    const int K = order();
    Jet s(K, 0.0);
    for (int k = 1; k <= K; ++k) {
      // Coefficient k of sum_{j>=2} c_j s^j with current lower-order s.
      Jet pw(K, 1.0), acc(K, 0.0);
      for (int j = 1; j <= K; ++j) {
        pw = pw * s;
        if (j >= 2) acc = acc + pw * c_[j];
      }
      s.c_[k] = ((k == 1 ? 1.0 : 0.0) - acc.c_[k]) / c_[1];
    }
    return s;
  }

 private:
  std::vector<double> c_;
};

inline Jet sin(const Jet& x) {
  std::vector<double> d(x.order() + 1);
  for (int k = 0; k <= x.order(); ++k) d[k] = std::sin(x[0] + 0.5 * pi * k);
  return x.compose_outer(d);
}

inline Jet cos(const Jet& x) {
  std::vector<double> d(x.order() + 1);
  for (int k = 0; k <= x.order(); ++k) d[k] = std::cos(x[0] + 0.5 * pi * k);
  return x.compose_outer(d);
}

// x^p for real p about a positive base point.
inline Jet pow(const Jet& x, double p) {
  std::vector<double> d(x.order() + 1);
  double coef = 1.0;
  for (int k = 0; k <= x.order(); ++k) {
    d[k] = coef * std::pow(x[0], p - k);
    coef *= (p - k);
  }
  return x.compose_outer(d);
}

}  // namespace linc
