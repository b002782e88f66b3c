#include "pottssos/extremality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pottssos {

std::string to_string(Status s) {
  switch (s) {
    case Status::NonExtreme: return "NonExtreme";
    case Status::Extreme: return "Extreme";
    case Status::Undetermined: return "Undetermined";
  }
  return "?";
}

KsResult kesten_stigum(const Spectrum& spec, int k) {
  if (k < 1) throw std::invalid_argument("kesten_stigum: k must be >= 1");
  KsResult ks;
  ks.eta = k * spec.lambda_max * spec.lambda_max - 1.0;
  ks.fires = ks.eta > 0.0;
  return ks;
}

namespace {

double row_distance(const Matrix3& P, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t l = 0; l < 3; ++l) s += std::abs(P[i][l] - P[j][l]);
  return 0.5 * s;
}

}  // namespace

double kappa_of_kernel(const TransitionKernel& kern) {
  double best = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) best = std::max(best, row_distance(kern.P, i, j));
  return best;
}

double gamma_of_kernel(const TransitionKernel& kern) {
  return std::max({row_distance(kern.P, 0, 1), row_distance(kern.P, 0, 2),
                   row_distance(kern.P, 1, 2)});
}

ExtremalityVerdict extremality_verdict(const FixedPoint& fp, double theta, double r, int k,
                                       int measure_index) {
  const TransitionKernel kern = build_kernel(fp, theta, r);
  ExtremalityVerdict v;
  v.measure_index = measure_index;
  v.spectrum = spectrum(kern);
  v.lambda_max = v.spectrum.lambda_max;
  v.eta = kesten_stigum(v.spectrum, k).eta;
  v.kappa = kappa_of_kernel(kern);
  v.gamma = gamma_of_kernel(kern);
  v.two_kappa_gamma = k * v.kappa * v.gamma;

  const bool on_line = std::abs(r - theta * theta) <= kZeroBand * std::max(1.0, r) &&
                       std::abs(fp.x - 1.0) <= 1e-10;
  v.heuristic = !on_line;

  const Sign eta_sign = banded_sign(v.eta);
  const Sign kg_sign = banded_sign(v.two_kappa_gamma - 1.0);
  if (eta_sign == Sign::Positive)
    v.status = Status::NonExtreme;
  else if (eta_sign == Sign::Negative && kg_sign == Sign::Negative)
    v.status = Status::Extreme;
  else
    v.status = Status::Undetermined;
  return v;
}

double kappa_closed_form(double theta, double y) {
  return (2.0 * std::abs(1.0 - theta * y) + y * y * std::abs(theta - y)) /
         (2.0 * y * (2.0 * theta + y * y));
}

double u_closed_form(double theta, double y) {
  const double num = y * y * y - theta * y * y - 2.0 * theta * y + 2.0;
  const double den = 2.0 * theta + y * y;
  return num * num / (2.0 * y * y * den * den) - 1.0;
}

double cardano_y1(double theta) {
  if (!(theta > 0.0)) throw std::domain_error("cardano_y1: theta must be > 0");
  const double t2 = theta * theta;
  const double D = 4.0 * (t2 * t2 - 10.0 * t2 * theta + 18.0 * t2 - 27.0);
  if (D >= 0.0)
    throw std::domain_error("cardano_y1: discriminant is non-negative (theta >= theta_c)");
  const double C = std::cbrt(t2 * theta - 9.0 * t2 + 27.0 + 1.5 * std::sqrt(-3.0 * D));
  if (C == 0.0) throw std::domain_error("cardano_y1: degenerate cube root");
  return (theta + C + (t2 - 6.0 * theta) / C) / 3.0;
}

std::vector<FixedPoint> square_line_measures(double theta) {
  auto fps = enumerate_tisgm(theta, theta * theta).fixed_points;
  std::sort(fps.begin(), fps.end(), [](const auto& a, const auto& b) { return a.y < b.y; });
  return fps;
}

double square_line_eta(int index, double theta) {
  const auto fps = square_line_measures(theta);
  if (index < 1 || index > static_cast<int>(fps.size()))
    throw std::out_of_range("measure mu_" + std::to_string(index) + " does not exist at theta=" +
                            std::to_string(theta));
  const FixedPoint& fp = fps[static_cast<std::size_t>(index - 1)];
  return kesten_stigum(spectrum(build_kernel(fp, theta, theta * theta)), 2).eta;
}

double theta_triple() {
  const double c2 = std::cbrt(2.0);
  return 3.0 * c2 * (c2 - 1.0);
}

std::string to_string(ThresholdName n) {
  switch (n) {
    case ThresholdName::ThetaC: return "theta_c";
    case ThresholdName::RcAtTheta1: return "r_c_at_theta1";
    case ThresholdName::ThetaKs1: return "theta_ks1";
    case ThresholdName::ThetaKs2: return "theta_ks2";
  }
  return "?";
}

ThresholdName parse_threshold_name(const std::string& s) {
  if (s == "theta_c") return ThresholdName::ThetaC;
  if (s == "r_c" || s == "r_c_at_theta1") return ThresholdName::RcAtTheta1;
  if (s == "theta_ks1") return ThresholdName::ThetaKs1;
  if (s == "theta_ks2") return ThresholdName::ThetaKs2;
  throw std::invalid_argument("unknown threshold name '" + s + "'");
}

namespace {

double eta_mu1(double theta) {
  const FixedPoint fp{1.0, cardano_y1(theta), Branch::CubicX1, 0.0};
  return kesten_stigum(spectrum(build_kernel(fp, theta, theta * theta)), 2).eta;
}

double eta_mu2(double theta) {
  const RootSet rs = solve_cubic(1.0, -theta, 2.0 * theta, -2.0);
  if (rs.roots.size() != 3) throw std::domain_error("eta_mu2: mu_2 does not exist here");
  const FixedPoint fp{1.0, rs.roots[1], Branch::CubicX1, 0.0};
  return kesten_stigum(spectrum(build_kernel(fp, theta, theta * theta)), 2).eta;
}

}  // namespace

ThresholdReport find_threshold(ThresholdName name) {
  ThresholdReport rep;
  rep.name = name;
  auto run = [&](auto&& f, double lo, double hi, std::string desc) {
    rep.search_lo = lo;
    rep.search_hi = hi;
    rep.defining_function = std::move(desc);
    try {
      const Bracket b = bisect_bracket(f, lo, hi, 1e-15);
      rep.lo = b.lo;
      rep.hi = b.hi;
      rep.value = b.mid();
    } catch (const BracketError&) {
      throw BracketError("find_threshold(" + to_string(name) + "): no sign change of " +
                         rep.defining_function);
    }
  };
  switch (name) {
    case ThresholdName::ThetaC:
      run([](double t) { return t * t * t * t - 10.0 * t * t * t + 18.0 * t * t - 27.0; }, 7.0,
          8.0, "theta^4 - 10 theta^3 + 18 theta^2 - 27 (discriminant of the r = theta^2 cubic)");
      break;
    case ThresholdName::RcAtTheta1: {
      const double t1 = theta_triple();
      run([t1](double r) { return depressed_form(t1, r).Q; }, 4.0, 5.0,
          "Q(r, theta) = (p/3)^3 + (q/2)^2 at theta = 3 cbrt(2) (cbrt(2) - 1)");
      break;
    }
    case ThresholdName::ThetaKs1:
      run(eta_mu1, 0.1, 0.3, "eta_1(theta) = 2 lambda_max^2 - 1 for mu_1 on r = theta^2");
      break;
    case ThresholdName::ThetaKs2:
      run(eta_mu2, 9.0, 10.0, "eta_2(theta) = 2 lambda_max^2 - 1 for mu_2 on r = theta^2");
      break;
  }
  return rep;
}

}  // namespace pottssos
