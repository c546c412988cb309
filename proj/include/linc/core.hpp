#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace linc {

using Index = Eigen::Index;
using cplx = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RMat = Mat<double>;
using CMat = Mat<cplx>;
using RVec = Vec<double>;
using CVec = Vec<cplx>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Boltzmann constant over Planck constant in GHz/K.
inline constexpr double kB_over_h_GHz = 20.836619123;

// Energies are ordinary frequencies in GHz, so converting a GHz value to an
// angular rate in 1/us multiplies by this.
inline constexpr double ghz_to_rad_per_us = two_pi * 1.0e3;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LINC_DEFINE_ERROR(Name)            \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

LINC_DEFINE_ERROR(InvalidDimension)
LINC_DEFINE_ERROR(ContractViolation)
LINC_DEFINE_ERROR(DimensionMismatch)
LINC_DEFINE_ERROR(NormalizationError)
LINC_DEFINE_ERROR(ConfigurationError)
LINC_DEFINE_ERROR(InstabilityError)
LINC_DEFINE_ERROR(NoRootError)
LINC_DEFINE_ERROR(DivergenceError)
LINC_DEFINE_ERROR(ResolutionError)
LINC_DEFINE_ERROR(AmplitudeTooSmallError)
LINC_DEFINE_ERROR(TruncationError)
LINC_DEFINE_ERROR(MultivaluedPotentialError)
LINC_DEFINE_ERROR(ParametricSolveError)

#undef LINC_DEFINE_ERROR

class AmbiguousLabelError : public Error {
 public:
  AmbiguousLabelError(const std::string& what, Index level, Index first, Index second,
                      double first_overlap, double second_overlap)
      : Error(what),
        level(level),
        first(first),
        second(second),
        first_overlap(first_overlap),
        second_overlap(second_overlap) {}
  Index level, first, second;
  double first_overlap, second_overlap;
};

}  // namespace linc
