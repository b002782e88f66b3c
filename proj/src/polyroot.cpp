#include "pottssos/polyroot.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <numbers>
#include <utility>

namespace pottssos {

namespace {

// Candidate eigenvalues closer than this (relative) are examined together
// as a possible multiple root.
constexpr double kClusterTol = 1e-4;

double rel_scale(double x) { return std::max(1.0, std::abs(x)); }

double newton_polish(std::span<const double> desc, double x, int max_iter = 8) {
  const auto d = poly_derivative(desc);
  double fx = poly_eval(desc, x);
  for (int i = 0; i < max_iter && fx != 0.0; ++i) {
    const double dfx = poly_eval(d, x);
    if (dfx == 0.0) break;
    const double nx = x - fx / dfx;
    const double nf = poly_eval(desc, nx);
    if (!(std::abs(nf) < std::abs(fx))) break;
    x = nx;
    fx = nf;
  }
  return x;
}

std::vector<double> strip_leading(std::span<const double> coeffs, double rel) {
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw std::domain_error("polynomial is identically zero");
  std::size_t first = 0;
  while (first + 1 < coeffs.size() && std::abs(coeffs[first]) <= rel * scale) ++first;
  return {coeffs.begin() + static_cast<std::ptrdiff_t>(first), coeffs.end()};
}

RootSet solve_quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  const Sign s = banded_sign(disc, std::max({1.0, b * b, std::abs(4.0 * a * c)}));
  if (s == Sign::Negative) return make_root_set({});
  if (s == Sign::Zero) return make_root_set({-b / (2.0 * a)}, {2});
  const double sq = std::sqrt(disc);
  const double t = -0.5 * (b + std::copysign(sq, b));
  std::vector<double> roots{t / a};
  if (t != 0.0) roots.push_back(c / t);
  else roots.push_back(-b / a - t / a);
  return make_root_set(std::move(roots));
}

using Candidate = std::complex<double>;

// Turns companion eigenvalues into real roots. Clusters of nearly equal
// eigenvalues are tested as a single multiple root located at the nearby
// zero of the appropriate derivative.
RootSet real_roots_from_eigenvalues(std::span<const double> desc,
                                    std::vector<Candidate> cands) {
  std::vector<Candidate> near_real;
  for (const auto& z : cands)
    if (std::abs(z.imag()) <= kClusterTol * rel_scale(std::abs(z))) near_real.push_back(z);
  std::sort(near_real.begin(), near_real.end(),
            [](const Candidate& a, const Candidate& b) { return a.real() < b.real(); });

  std::vector<double> roots;
  std::vector<int> mult;
  std::size_t i = 0;
  while (i < near_real.size()) {
    std::size_t j = i + 1;
    while (j < near_real.size() &&
           std::abs(near_real[j].real() - near_real[j - 1].real()) <=
               kClusterTol * rel_scale(near_real[j].real()))
      ++j;
    const auto size = static_cast<int>(j - i);
    if (size == 1) {
      roots.push_back(newton_polish(desc, near_real[i].real()));
      mult.push_back(1);
      i = j;
      continue;
    }
    double mean = 0.0;
    for (std::size_t t = i; t < j; ++t) mean += near_real[t].real();
    mean /= size;
    std::vector<double> deriv(desc.begin(), desc.end());
    for (int d = 0; d < size - 1; ++d) deriv = poly_derivative(deriv);
    double c = newton_polish(deriv, mean);
    if (std::abs(c - mean) > 10.0 * kClusterTol * rel_scale(mean)) c = mean;
    if (banded_sign(poly_eval(desc, c), poly_abs_eval(desc, c)) == Sign::Zero) {
      roots.push_back(c);
      mult.push_back(size);
    } else {
      for (std::size_t t = i; t < j; ++t) {
        if (near_real[t].imag() != 0.0) continue;
        roots.push_back(newton_polish(desc, near_real[t].real()));
        mult.push_back(1);
      }
    }
    i = j;
  }
  return make_root_set(std::move(roots), std::move(mult));
}

using RootList = std::vector<std::pair<double, int>>;

RootList oracle_recursive(const std::vector<double>& desc) {
  const std::size_t deg = desc.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) return {{-desc[1] / desc[0], 1}};

  double bound = 0.0;
  for (std::size_t i = 1; i < desc.size(); ++i)
    bound = std::max(bound, std::abs(desc[i] / desc[0]));
  bound += 1.0;

  const RootList crit = oracle_recursive(poly_derivative(desc));
  struct Node {
    double x;
    bool is_root;
  };
  std::vector<Node> nodes{{-bound, false}};
  RootList out;
  for (const auto& [c, mc] : crit) {
    if (c <= -bound || c >= bound) continue;
    const bool root =
        banded_sign(poly_eval(desc, c), poly_abs_eval(desc, c)) == Sign::Zero;
    if (root) out.emplace_back(c, mc + 1);
    nodes.push_back({c, root});
  }
  nodes.push_back({bound, false});

  auto f = [&](double x) { return poly_eval(desc, x); };
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Node& a = nodes[i];
    const Node& b = nodes[i + 1];
    if (a.is_root || b.is_root || !(a.x < b.x)) continue;
    const double fa = f(a.x);
    const double fb = f(b.x);
    if (fa == 0.0) {
      out.emplace_back(a.x, 1);
    } else if (fb != 0.0 && std::signbit(fa) != std::signbit(fb)) {
      out.emplace_back(bisect_root(f, a.x, b.x, 1e-300), 1);
    }
  }
  std::sort(out.begin(), out.end());
  // coalesce duplicates produced when a crit point sits on an interval end
  RootList merged;
  for (const auto& r : out) {
    if (!merged.empty() &&
        std::abs(r.first - merged.back().first) <= kMergeTol * rel_scale(r.first)) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace

Sign banded_sign(double value, double scale, double band) {
  if (std::abs(value) <= band * scale) return Sign::Zero;
  return value > 0.0 ? Sign::Positive : Sign::Negative;
}

int RootSet::positive_count_with_multiplicity() const {
  int n = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i] > kZeroBand) n += multiplicities[i];
  return n;
}

bool RootSet::has_multiple_root() const {
  return std::any_of(multiplicities.begin(), multiplicities.end(),
                     [](int m) { return m > 1; });
}

RootSet make_root_set(std::vector<double> raw, std::vector<int> mult) {
  if (mult.empty()) mult.assign(raw.size(), 1);
  std::vector<std::pair<double, int>> items;
  items.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) items.emplace_back(raw[i], mult[i]);
  std::sort(items.begin(), items.end());

  RootSet out;
  for (const auto& [x, m] : items) {
    if (!out.roots.empty()) {
      double& last = out.roots.back();
      int& lm = out.multiplicities.back();
      if (std::abs(x - last) <= kMergeTol * std::max({1.0, std::abs(x), std::abs(last)})) {
        last = (last * lm + x * m) / (lm + m);
        lm += m;
        continue;
      }
    }
    out.roots.push_back(x);
    out.multiplicities.push_back(m);
  }
  out.positive_count = static_cast<int>(
      std::count_if(out.roots.begin(), out.roots.end(), [](double x) { return x > kZeroBand; }));
  return out;
}

double poly_eval(std::span<const double> desc, double x) {
  double acc = 0.0;
  for (double c : desc) acc = acc * x + c;
  return acc;
}

double poly_abs_eval(std::span<const double> desc, double x) {
  const double ax = std::abs(x);
  double acc = 0.0;
  for (double c : desc) acc = acc * ax + std::abs(c);
  return acc;
}

std::vector<double> poly_derivative(std::span<const double> desc) {
  if (desc.size() <= 1) return {0.0};
  const std::size_t deg = desc.size() - 1;
  std::vector<double> d(deg);
  for (std::size_t i = 0; i < deg; ++i) d[i] = desc[i] * static_cast<double>(deg - i);
  return d;
}

std::array<double, 4> cubic_x1_coefficients(double theta, double r) {
  return {theta, -r, theta * theta + r, -2.0 * theta};
}

Sign DepressedCubicAnalysis::q_sign() const {
  const double scale = std::max({1.0, std::abs(std::pow(p / 3.0, 3)), (q / 2.0) * (q / 2.0)});
  return banded_sign(Q, scale);
}

bool DepressedCubicAnalysis::triple() const {
  return std::abs(p) <= kZeroBand * std::max(1.0, shift * shift) &&
         std::abs(q) <= kZeroBand * std::max(1.0, std::abs(shift * shift * shift));
}

DepressedCubicAnalysis depress_cubic(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0) throw std::invalid_argument("cubic: leading coefficient is zero");
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  DepressedCubicAnalysis d;
  d.shift = -a / 3.0;
  d.p = b - a * a / 3.0;
  d.q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  d.Q = std::pow(d.p / 3.0, 3) + (d.q / 2.0) * (d.q / 2.0);
  return d;
}

DepressedCubicAnalysis depressed_form(double theta, double r) {
  const auto c = cubic_x1_coefficients(theta, r);
  return depress_cubic(c[0], c[1], c[2], c[3]);
}

RootSet solve_cubic(double c3, double c2, double c1, double c0) {
  const DepressedCubicAnalysis d = depress_cubic(c3, c2, c1, c0);
  const std::array<double, 4> desc{c3, c2, c1, c0};
  const double p = d.p;
  const double q = d.q;

  if (d.triple()) return make_root_set({d.shift}, {3});

  switch (d.q_sign()) {
    case Sign::Zero: {
      // one simple and one double root
      const double simple = 3.0 * q / p + d.shift;
      const double dbl = -1.5 * q / p + d.shift;
      return make_root_set({newton_polish(desc, simple), dbl}, {1, 2});
    }
    case Sign::Positive: {
      const double sq = std::sqrt(d.Q);
      const double t = -q / 2.0;
      const double u = std::cbrt(t + std::copysign(sq, t));
      const double z = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
      return make_root_set({newton_polish(desc, z + d.shift)});
    }
    case Sign::Negative: {
      const double amp = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      std::vector<double> roots;
      for (int k = 0; k < 3; ++k) {
        const double z = amp * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
        roots.push_back(newton_polish(desc, z + d.shift));
      }
      return make_root_set(std::move(roots));
    }
  }
  return {};
}

std::array<double, 5> quartic_branch_coefficients(double theta, double r) {
  const double t = theta;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double dr = r - t2;
  const double dr2 = dr * dr;
  return {
      t2 * (t + 1.0) * (r * r - 2.0 * t * r + t3 - t2 + t),
      -t * dr * (r * r + (t2 + 1.0) * r - 3.0 * t2),
      ((t + 1.0) * r + t3) * dr2,
      -(r + t2) * dr2,
      t * dr2,
  };
}

RootSet solve_quartic(std::span<const double> coeffs) {
  if (coeffs.empty() || coeffs.size() > 5)
    throw std::invalid_argument("solve_quartic: expected at most 5 coefficients");
  const std::vector<double> desc = strip_leading(coeffs, 1e-14);
  switch (desc.size() - 1) {
    case 0:
      return {};
    case 1:
      return make_root_set({-desc[1] / desc[0]});
    case 2:
      return solve_quadratic(desc[0], desc[1], desc[2]);
    case 3:
      return solve_cubic(desc[0], desc[1], desc[2], desc[3]);
    default:
      break;
  }
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int j = 0; j < 4; ++j) companion(0, j) = -desc[static_cast<std::size_t>(j) + 1] / desc[0];
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix4d> es(companion, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("solve_quartic: eigensolver failed");
  std::vector<Candidate> cands;
  for (int i = 0; i < 4; ++i) cands.push_back(es.eigenvalues()(i));
  return real_roots_from_eigenvalues(desc, std::move(cands));
}

RootSet oracle_real_roots(std::span<const double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("oracle_real_roots: no coefficients");
  const std::vector<double> desc = strip_leading(coeffs, 0.0);
  std::vector<double> roots;
  std::vector<int> mult;
  for (const auto& [x, m] : oracle_recursive(desc)) {
    roots.push_back(x);
    mult.push_back(m);
  }
  return make_root_set(std::move(roots), std::move(mult));
}

}  // namespace pottssos
