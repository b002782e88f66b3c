#include "pottssos/chain.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace pottssos {

TransitionKernel build_kernel(const FixedPoint& fp, double theta, double r) {
  const double x = fp.x;
  const double y = fp.y;
  if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("build_kernel: x, y must be > 0");
  TransitionKernel k;
  k.source = fp;
  k.theta = theta;
  k.r = r;
  const double t2 = theta * theta;
  k.Z = t2 * x * x + theta * y * y + r;
  const double Z = k.Z;
  k.P = {{{r * x / Z, theta * y * y / (x * Z), t2 / (x * Z)},
          {theta * x * x / (y * Z), r * y / Z, theta / (y * Z)},
          {t2 * x * x / Z, theta * y * y / Z, r / Z}}};
  for (auto& row : k.P) {
    const double s = row[0] + row[1] + row[2];
    if (std::abs(s - 1.0) > 1e-8)
      throw KernelInconsistency("build_kernel: row sum " + std::to_string(s) +
                                " deviates from 1; (x, y) is not a fixed point");
    for (double& v : row) v /= s;
  }
  return k;
}

Spectrum spectrum(const TransitionKernel& kern) {
  const double x = kern.source.x;
  const double y = kern.source.y;
  const double t = kern.theta;
  const double r = kern.r;
  const double Z = kern.Z;
  const double t2 = t * t;
  const double t4 = t2 * t2;
  const double b = (1.0 + x + y) * r - Z;
  const double c = 2.0 * t4 - t4 * r - 2.0 * t2 * r + r * r * r;
  Spectrum s;
  s.Dstar = b * b - 4.0 * x * y * c / Z;
  if (s.Dstar >= 0.0) {
    const double sq = std::sqrt(s.Dstar);
    s.lambda1 = (b + sq) / (2.0 * Z);
    s.lambda2 = (b - sq) / (2.0 * Z);
    s.lambda_max = std::max(std::abs(s.lambda1), std::abs(s.lambda2));
  } else {
    s.complex_pair = true;
    s.lambda1 = s.lambda2 = b / (2.0 * Z);
    s.lambda_max = std::sqrt(b * b - s.Dstar) / (2.0 * Z);
  }
  return s;
}

std::array<std::complex<double>, 2> direct_nonunit_eigenvalues(const Matrix3& P) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Eigen::EigenSolver<Eigen::Matrix3d> es(m, false);
  std::array<std::complex<double>, 3> ev{es.eigenvalues()(0), es.eigenvalues()(1),
                                         es.eigenvalues()(2)};
  // drop the eigenvalue closest to 1
  const auto unit = std::min_element(ev.begin(), ev.end(), [](auto a, auto b) {
    return std::abs(a - 1.0) < std::abs(b - 1.0);
  });
  std::array<std::complex<double>, 2> out{};
  std::size_t n = 0;
  for (auto it = ev.begin(); it != ev.end(); ++it)
    if (it != unit) out[n++] = *it;
  if (std::abs(out[0]) < std::abs(out[1])) std::swap(out[0], out[1]);
  return out;
}

StationaryLaw stationary_law(const TransitionKernel& kern) {
  // solve nu (P - I) = 0 with sum(nu) = 1
  Eigen::Matrix3d A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      A(i, j) = kern.P[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
  A.row(2).setOnes();
  const Eigen::Vector3d rhs(0.0, 0.0, 1.0);
  const Eigen::Vector3d nu = A.fullPivLu().solve(rhs);
  StationaryLaw law;
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    law.nu[static_cast<std::size_t>(i)] = std::max(0.0, nu(i));
    s += law.nu[static_cast<std::size_t>(i)];
  }
  for (double& v : law.nu) v /= s;
  return law;
}

TransitionKernel uniform_kernel() { return build_kernel(FixedPoint{1.0, 1.0}, 1.0, 1.0); }

}  // namespace pottssos
