// Tree-indexed Markov chain of a k = m = 2 TISGM: transition kernel,
// spectrum and stationary law.
#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include "pottssos/tisgm.hpp"

namespace pottssos {

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Vector3 = std::array<double, 3>;

class KernelInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TransitionKernel {
  Matrix3 P{};
  double Z = 0.0;  ///< theta^2 x^2 + theta y^2 + r
  FixedPoint source;
  double theta = 1.0;
  double r = 1.0;
};

/// P = (1/Z) [[r x, theta y^2/x, theta^2/x], [theta x^2/y, r y, theta/y],
///            [theta^2 x^2, theta y^2, r]].
/// Throws KernelInconsistency if a row sum is off by more than 1e-8; rows are
/// then renormalized so they sum to 1 to rounding.
TransitionKernel build_kernel(const FixedPoint& fp, double theta, double r);

/// The two eigenvalues besides 1, from the closed-form quadratic.
struct Spectrum {
  double lambda1 = 0.0;  ///< real part when complex
  double lambda2 = 0.0;
  double lambda_max = 0.0;  ///< max(|lambda1|, |lambda2|), modulus for a complex pair
  double Dstar = 0.0;
  bool complex_pair = false;
};

Spectrum spectrum(const TransitionKernel& kern);

/// Non-unit eigenvalues of P by a direct 3x3 eigensolve, ordered by
/// decreasing modulus.
std::array<std::complex<double>, 2> direct_nonunit_eigenvalues(const Matrix3& P);

struct StationaryLaw {
  Vector3 nu{};
};

StationaryLaw stationary_law(const TransitionKernel& kern);

/// Uniform kernel (all entries 1/3) of the free measure at theta = r = 1.
TransitionKernel uniform_kernel();

}  // namespace pottssos
