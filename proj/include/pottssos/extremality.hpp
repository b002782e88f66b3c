// Extremality of TISGMs: the Kesten-Stigum condition k lambda_max^2 > 1
// (non-extreme) and the k kappa gamma < 1 condition (extreme), plus the
// threshold constants where these verdicts change on the r = theta^2 line.
#pragma once

#include <string>
#include <vector>

#include "pottssos/chain.hpp"

namespace pottssos {

enum class Status { NonExtreme, Extreme, Undetermined };

std::string to_string(Status s);

struct KsResult {
  double eta = 0.0;  ///< k lambda_max^2 - 1
  bool fires = false;
};

KsResult kesten_stigum(const Spectrum& spec, int k);

/// Half the largest L1 distance between two rows of P.
double kappa_of_kernel(const TransitionKernel& kern);

/// Largest variation distance among the row pairs (0,1), (0,2), (1,2).
/// This is exact for the (1, y) kernels on the r = theta^2 line only.
double gamma_of_kernel(const TransitionKernel& kern);

struct ExtremalityVerdict {
  int measure_index = 0;
  double lambda_max = 0.0;
  double eta = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double two_kappa_gamma = 0.0;  ///< k kappa gamma
  Status status = Status::Undetermined;
  /// The kappa-gamma test is only justified on r = theta^2 with x = 1.
  bool heuristic = false;
  Spectrum spectrum;
};

/// NonExtreme when eta > 0, Extreme when eta <= 0 and k kappa gamma < 1,
/// Undetermined otherwise (including values inside the zero band).
ExtremalityVerdict extremality_verdict(const FixedPoint& fp, double theta, double r, int k = 2,
                                       int measure_index = 0);

/// kappa on the r = theta^2 line for the fixed point (1, y):
/// (2 |1 - theta y| + y^2 |theta - y|) / (2 y (2 theta + y^2)).
double kappa_closed_form(double theta, double y);

/// U(theta) = (y^3 - theta y^2 - 2 theta y + 2)^2 / (2 y^2 (2 theta + y^2)^2) - 1,
/// which equals 2 kappa gamma - 1 for the (1, y) measures on r = theta^2.
double u_closed_form(double theta, double y);

/// The single real root of y^3 - theta y^2 + 2 theta y - 2 by Cardano's
/// formula. Throws std::domain_error where the discriminant is >= 0.
double cardano_y1(double theta);

/// Fixed points on r = theta^2 ordered by ascending y (mu_1, mu_2, mu_3).
std::vector<FixedPoint> square_line_measures(double theta);

/// eta of mu_index (1-based) on r = theta^2; throws std::out_of_range if that
/// measure does not exist at theta.
double square_line_eta(int index, double theta);

/// 3 cbrt(2) (cbrt(2) - 1), where p = q = 0 for the x = 1 cubic.
double theta_triple();

enum class ThresholdName { ThetaC, RcAtTheta1, ThetaKs1, ThetaKs2 };

std::string to_string(ThresholdName n);
/// Accepts theta_c, r_c, r_c_at_theta1, theta_ks1, theta_ks2.
ThresholdName parse_threshold_name(const std::string& s);

struct ThresholdReport {
  ThresholdName name = ThresholdName::ThetaC;
  double value = 0.0;
  double lo = 0.0;  ///< final bracket
  double hi = 0.0;
  double search_lo = 0.0;  ///< initial bracket
  double search_hi = 0.0;
  std::string defining_function;
};

/// Bisection of the defining function over its fixed search bracket down to
/// machine resolution. Throws BracketError naming the function on failure.
ThresholdReport find_threshold(ThresholdName name);

}  // namespace pottssos
