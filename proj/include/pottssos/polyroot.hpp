// Real-root machinery for the cubic and quartic equations that parameterize
// translation-invariant boundary laws at k = m = 2.
//
// Coefficients are always given in descending order: {c_n, ..., c_1, c_0}.
#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pottssos {

/// Half-width of the band around zero inside which a sign test reports 0.
inline constexpr double kZeroBand = 1e-10;
/// Roots closer than kMergeTol * max(1, |root|) are one root.
inline constexpr double kMergeTol = 1e-7;

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

/// Sign of value with |value| <= band * scale reported as Zero.
Sign banded_sign(double value, double scale = 1.0, double band = kZeroBand);

struct RootSet {
  std::vector<double> roots;       ///< ascending, pairwise distinct
  std::vector<int> multiplicities;  ///< same length as roots
  int positive_count = 0;           ///< roots > 0, without multiplicity

  int positive_count_with_multiplicity() const;
  bool has_multiple_root() const;
};

/// Build a RootSet from raw real roots (unsorted, possibly repeated).
/// Neighbours closer than kMergeTol merge with summed multiplicity.
RootSet make_root_set(std::vector<double> raw, std::vector<int> mult = {});

// ---- polynomial helpers ---------------------------------------------------

double poly_eval(std::span<const double> desc, double x);
std::vector<double> poly_derivative(std::span<const double> desc);
/// sum |c_i| |x|^i, the natural scale of poly_eval(desc, x)
double poly_abs_eval(std::span<const double> desc, double x);

// ---- the cubic branch (x = 1) ---------------------------------------------

/// theta y^3 - r y^2 + (theta^2 + r) y - 2 theta
std::array<double, 4> cubic_x1_coefficients(double theta, double r);

struct DepressedCubicAnalysis {
  double p = 0.0;      ///< linear coefficient after the shift
  double q = 0.0;      ///< constant term after the shift
  double Q = 0.0;      ///< (p/3)^3 + (q/2)^2
  double shift = 0.0;  ///< y = z + shift

  Sign q_sign() const;  ///< banded sign of Q
  bool triple() const;  ///< p and q both inside the zero band
};

/// Depressed form of a general cubic c3 y^3 + c2 y^2 + c1 y + c0.
DepressedCubicAnalysis depress_cubic(double c3, double c2, double c1, double c0);

/// Depressed form of the x = 1 cubic; shift = r / (3 theta).
DepressedCubicAnalysis depressed_form(double theta, double r);

/// Closed-form real roots (Cardano / trigonometric). Throws
/// std::invalid_argument when c3 == 0.
RootSet solve_cubic(double c3, double c2, double c1, double c0);

// ---- the quartic branch (x != 1) ------------------------------------------

/// Resultant quartic in y obtained by eliminating x from the x != 1 system.
std::array<double, 5> quartic_branch_coefficients(double theta, double r);

/// Real roots of a quartic, found numerically from the companion matrix with
/// multiple-root detection. Degrades to lower degree when the leading
/// coefficient vanishes; throws std::domain_error on the zero polynomial.
RootSet solve_quartic(std::span<const double> coeffs);

/// Independent real-root finder: recursive bracketing between the real
/// critical points. Works for any degree.
RootSet oracle_real_roots(std::span<const double> coeffs);

// ---- bisection -------------------------------------------------------------

class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Bracket {
  double lo;
  double hi;
  double mid() const { return 0.5 * (lo + hi); }
};

/// Bisection on [lo, hi]. Requires f(lo) f(hi) < 0 (or an endpoint root).
/// Shrinks the bracket until its width is <= tol or it reaches machine
/// resolution; an exact zero collapses it to a point.
template <class F>
Bracket bisect_bracket(F&& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_root: tol must be > 0");
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, lo};
  if (fhi == 0.0) return {hi, hi};
  if (!(std::signbit(flo) != std::signbit(fhi)))
    throw BracketError("bisect_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid};
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

/// Midpoint of bisect_bracket(f, lo, hi, tol).
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
  return bisect_bracket(std::forward<F>(f), lo, hi, tol).mid();
}

}  // namespace pottssos
