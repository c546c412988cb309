#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "linc/core.hpp"

namespace linc {

template <typename Scalar>
struct Ladder {
  Mat<Scalar> annihilation;
  Mat<Scalar> creation;
};

template <typename Scalar = double>
Ladder<Scalar> ladder(Index dim) {
  if (dim < 2) throw InvalidDimension("ladder: dim must be at least 2");
  Mat<Scalar> a = Mat<Scalar>::Zero(dim, dim);
  for (Index n = 1; n < dim; ++n) a(n - 1, n) = Scalar(std::sqrt(double(n)));
  return {a, a.adjoint()};
}

template <typename Scalar = double>
Mat<Scalar> annihilation(Index dim) {
  return ladder<Scalar>(dim).annihilation;
}

// max|M - M^H| relative to max|M|; zero for the zero matrix.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, const char* where) {
  if (m.rows() != m.cols() || hermiticity_defect(m) > 1e-12)
    throw ContractViolation(std::string(where) + ": operator is not Hermitian");
}

template <typename Scalar>
struct Spectrum {
  RVec energies;
  Mat<Scalar> states;
};

template <typename Derived>
Spectrum<typename Derived::Scalar> eig_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_hermitian(m, "eig_hermitian");
  Mat<Scalar> sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(sym);
  if (es.info() != Eigen::Success) throw ContractViolation("eig_hermitian: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// f(M) through the spectral decomposition of a Hermitian M.
template <typename Derived, typename F>
Mat<typename Derived::Scalar> op_fn(const Eigen::MatrixBase<Derived>& m, F&& f) {
  require_hermitian(m, "op_fn");
  auto s = eig_hermitian(m);
  RVec fv = s.energies.unaryExpr([&](double x) { return double(f(x)); });
  return s.states * fv.asDiagonal() * s.states.adjoint();
}

template <typename DA, typename DB>
Mat<typename DA::Scalar> kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  Mat<typename DA::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Kronecker product in list order; the tensor ordering convention for the
// three-mode system is (Alice, Bob, coupler).
template <typename Scalar>
Mat<Scalar> tensor(const std::vector<Mat<Scalar>>& ops) {
  if (ops.empty()) throw DimensionMismatch("tensor: empty factor list");
  Mat<Scalar> out = ops.front();
  for (std::size_t k = 1; k < ops.size(); ++k) out = kron(out, ops[k]);
  return out;
}

template <typename Derived>
Mat<typename Derived::Scalar> embed(const Eigen::MatrixBase<Derived>& op, std::size_t factor,
                                    const std::vector<Index>& dims) {
  using Scalar = typename Derived::Scalar;
  if (factor >= dims.size()) throw DimensionMismatch("embed: factor index out of range");
  if (op.rows() != dims[factor] || op.cols() != dims[factor])
    throw DimensionMismatch("embed: operator size does not match factor dimension");
  std::vector<Mat<Scalar>> parts;
  for (std::size_t k = 0; k < dims.size(); ++k)
    parts.push_back(k == factor ? Mat<Scalar>(op) : Mat<Scalar>::Identity(dims[k], dims[k]));
  return tensor(parts);
}

inline Index product(const std::vector<Index>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index(1), std::multiplies<>());
}

template <typename Derived>
void require_unit_trace(const Eigen::MatrixBase<Derived>& rho, const char* where) {
  const double tr = std::real(cplx(rho.trace()));
  if (std::abs(tr - 1.0) > 1e-8)
    throw NormalizationError(std::string(where) + ": trace differs from 1 by " +
                             std::to_string(tr - 1.0));
}

// Trace out every factor not listed in keep; kept factors retain their order.
template <typename Derived>
Mat<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& rho,
                                            const std::vector<Index>& dims,
                                            std::vector<std::size_t> keep) {
  using Scalar = typename Derived::Scalar;
  const Index total = product(dims);
  if (rho.rows() != total || rho.cols() != total)
    throw DimensionMismatch("partial_trace: rho size does not match dims");
  require_unit_trace(rho, "partial_trace");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const std::size_t nf = dims.size();
  std::vector<bool> kept(nf, false);
  for (auto k : keep) {
    if (k >= nf) throw DimensionMismatch("partial_trace: keep index out of range");
    kept[k] = true;
  }
  std::vector<Index> kdims, tdims;
  for (std::size_t k = 0; k < nf; ++k) (kept[k] ? kdims : tdims).push_back(dims[k]);
  const Index kd = product(kdims), td = product(tdims);

  std::vector<Index> stride(nf, 1);
  for (std::size_t k = nf - 1; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];

  // Decompose a (kept, traced) index pair into the full row-major index.
  auto full_index = [&](Index ki, Index ti) {
    Index idx = 0;
    for (std::size_t k = nf; k-- > 0;) {
      if (kept[k]) {
        const Index d = dims[k];
        idx += (ki % d) * stride[k];
        ki /= d;
      } else {
        const Index d = dims[k];
        idx += (ti % d) * stride[k];
        ti /= d;
      }
    }
    return idx;
  };

  Mat<Scalar> out = Mat<Scalar>::Zero(kd, kd);
  for (Index i = 0; i < kd; ++i)
    for (Index j = 0; j < kd; ++j) {
      Scalar acc(0);
      for (Index t = 0; t < td; ++t) acc += rho(full_index(i, t), full_index(j, t));
      out(i, j) = acc;
    }
  return out;
}

template <typename Derived>
double purity(const Eigen::MatrixBase<Derived>& rho) {
  require_unit_trace(rho, "purity");
  return std::real(cplx((rho * rho).trace()));
}

// Truncated-oscillator helpers. Nonpolynomial functions of the phase are
// evaluated in a padded space and then cut back to dim, so low-lying matrix
// elements carry no truncation-edge artifacts.
struct OscillatorBasis {
  Index dim = 30;
  Index pad = 24;
  double zpf = 0.25;

  Index padded() const { return dim + pad; }

  RMat position_padded() const {
    RMat a = annihilation<double>(padded());
    return zpf * (a + a.transpose());
  }
  // phase operator theta = zpf (a + a^dag)
  RMat position() const { return truncate(position_padded()); }
  // n^2 with n = i(a^dag - a)/(2 zpf); real symmetric
  RMat charge_squared() const {
    RMat a = annihilation<double>(padded());
    RMat d = a.transpose() - a;
    return truncate(-(d * d) / (4.0 * zpf * zpf));
  }
  CMat charge() const {
    RMat a = annihilation<double>(dim);
    return cplx(0.0, 1.0 / (2.0 * zpf)) * (a.transpose() - a).cast<cplx>();
  }
  template <typename F>
  RMat phase_fn(F&& f) const {
    return truncate(op_fn(position_padded(), std::forward<F>(f)));
  }
  RMat truncate(const RMat& m) const { return m.topLeftCorner(dim, dim); }
};

struct ConvergenceReport {
  Index coarse_dim = 0, fine_dim = 0;
  RVec coarse, fine, tolerance;
  bool passed = false;
  double worst_fraction = 0.0;  // max |fine - coarse| / tolerance
};

// Recompute observables at dim and ceil(factor*dim); each must move by less
// than half its declared tolerance.
template <typename F>
ConvergenceReport check_truncation(F&& observables, Index dim, const RVec& tolerance,
                                   double factor = 1.5) {
  ConvergenceReport r;
  r.coarse_dim = dim;
  r.fine_dim = static_cast<Index>(std::ceil(factor * double(dim)));
  r.coarse = observables(r.coarse_dim);
  r.fine = observables(r.fine_dim);
  r.tolerance = tolerance;
  if (r.coarse.size() != tolerance.size() || r.fine.size() != tolerance.size())
    throw DimensionMismatch("check_truncation: observable count does not match tolerances");
  r.worst_fraction = ((r.fine - r.coarse).cwiseAbs().array() / tolerance.array()).maxCoeff();
  r.passed = r.worst_fraction < 0.5;
  return r;
}

}  // namespace linc
