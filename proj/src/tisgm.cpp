#include "pottssos/tisgm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pottssos {

namespace {

double log_sum_exp(const std::vector<double>& v) {
  const double mx = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double t : v) s += std::exp(t - mx);
  return mx + std::log(s);
}

bool same_point(const FixedPoint& a, const FixedPoint& b) {
  return std::abs(a.x - b.x) <= kMergeTol * std::max(1.0, std::abs(a.x)) &&
         std::abs(a.y - b.y) <= kMergeTol * std::max(1.0, std::abs(a.y));
}

Sign sign_r_minus_3theta2(double theta, double r) {
  const double t3 = 3.0 * theta * theta;
  return banded_sign(r - t3, std::max({1.0, r, t3}));
}

struct XQuadratic {
  double a, b, c;  // a x^2 + b x + c = 0
  double disc;
  Sign disc_sign;
};

// First equation of the x != 1 system viewed as a quadratic in x.
XQuadratic x_quadratic(double theta, double r, double y) {
  const double t2 = theta * theta;
  XQuadratic q{t2, t2 - r, t2 + theta * y * y, 0.0, Sign::Zero};
  q.disc = q.b * q.b - 4.0 * q.a * q.c;
  q.disc_sign = banded_sign(q.disc, std::max({1.0, q.b * q.b, 4.0 * q.a * q.c}));
  return q;
}

bool admissible_y(double theta, double r, double y) {
  const XQuadratic q = x_quadratic(theta, r, y);
  // both roots share the sign of -b = r - theta^2 since c / a > 0
  return q.disc_sign != Sign::Negative && r - theta * theta > 0.0;
}

std::vector<double> positive_x_roots(const XQuadratic& q) {
  if (q.disc_sign == Sign::Negative) return {};
  const double sq = std::sqrt(std::max(q.disc, 0.0));
  std::vector<double> xs;
  for (double x : {(-q.b - sq) / (2.0 * q.a), (-q.b + sq) / (2.0 * q.a)})
    if (x > 0.0) xs.push_back(x);
  return xs;
}

ARegion a_region_of(double theta, double r, const DepressedCubicAnalysis& d) {
  const Sign rs = sign_r_minus_3theta2(theta, r);
  if (rs == Sign::Zero) return ARegion::Boundary;
  const bool low = rs == Sign::Negative;
  if (d.triple()) return low ? ARegion::A1 : ARegion::Boundary;
  switch (d.q_sign()) {
    case Sign::Positive:
      return low ? ARegion::A1 : ARegion::A4;
    case Sign::Zero:
      return low ? ARegion::A2 : ARegion::A5;
    case Sign::Negative:
      return low ? ARegion::A3 : ARegion::A6;
  }
  return ARegion::Boundary;
}

bool quartic_degenerate(const std::array<double, 5>& qc) {
  double scale = 0.0;
  for (double c : qc) scale = std::max(scale, std::abs(c));
  return scale == 0.0 || std::abs(qc[0]) <= kZeroBand * scale;
}

RegionLabel label_from(double theta, double r, const DepressedCubicAnalysis& d,
                       const std::array<double, 5>& qc, const std::optional<RootSet>& quartic) {
  RegionLabel label;
  label.a_region = a_region_of(theta, r, d);
  if (quartic_degenerate(qc) || !quartic) {
    label.b_region = BRegion::NotApplicable;
    return label;
  }
  int count = 0;
  for (std::size_t i = 0; i < quartic->roots.size(); ++i) {
    const double y = quartic->roots[i];
    if (y > kZeroBand && admissible_y(theta, r, y)) count += quartic->multiplicities[i];
  }
  label.quartic_count = count;
  static constexpr BRegion by_count[] = {BRegion::B5, BRegion::B4, BRegion::B3, BRegion::B2,
                                         BRegion::B1};
  label.b_region = count <= 4 ? by_count[count] : BRegion::Boundary;
  return label;
}

void require_positive(double theta, double r) {
  if (!(std::isfinite(theta) && theta > 0.0) || !(std::isfinite(r) && r > 0.0))
    throw std::invalid_argument("theta and r must be finite and > 0");
}

}  // namespace

BoundaryLaw FixedPoint::boundary_law() const { return {{2.0 * std::log(x), 2.0 * std::log(y)}}; }

std::string to_string(ARegion a) {
  switch (a) {
    case ARegion::A1: return "A1";
    case ARegion::A2: return "A2";
    case ARegion::A3: return "A3";
    case ARegion::A4: return "A4";
    case ARegion::A5: return "A5";
    case ARegion::A6: return "A6";
    case ARegion::Boundary: return "Boundary";
  }
  return "?";
}

std::string to_string(BRegion b) {
  switch (b) {
    case BRegion::B1: return "B1";
    case BRegion::B2: return "B2";
    case BRegion::B3: return "B3";
    case BRegion::B4: return "B4";
    case BRegion::B5: return "B5";
    case BRegion::NotApplicable: return "NotApplicable";
    case BRegion::Boundary: return "Boundary";
  }
  return "?";
}

std::string to_string(Branch b) { return b == Branch::CubicX1 ? "cubic_x1" : "quartic"; }

std::string to_string(Line line) {
  switch (line) {
    case Line::Potts: return "potts";
    case Line::SOS: return "sos";
    case Line::Square: return "square";
  }
  return "?";
}

BoundaryLaw boundary_law_map(const BoundaryLaw& h, const ModelParams& params) {
  params.validate();
  const int m = params.m;
  if (static_cast<int>(h.h.size()) != m)
    throw std::invalid_argument("boundary law dimension must equal m");
  const double lt = std::log(params.theta);
  const double lr = std::log(params.r);
  auto log_w = [&](int i, int j) { return std::abs(i - j) * lt + (i == j ? lr : 0.0); };

  std::vector<double> terms(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j < m; ++j) terms[static_cast<std::size_t>(j)] = log_w(m, j) + h.h[static_cast<std::size_t>(j)];
  terms[static_cast<std::size_t>(m)] = lr;
  const double log_den = log_sum_exp(terms);

  BoundaryLaw out;
  out.h.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) terms[static_cast<std::size_t>(j)] = log_w(i, j) + h.h[static_cast<std::size_t>(j)];
    terms[static_cast<std::size_t>(m)] = log_w(i, m);
    out.h[static_cast<std::size_t>(i)] = log_sum_exp(terms) - log_den;
  }
  return out;
}

IterationReport ti_fixed_point_iterate(const BoundaryLaw& h0, const ModelParams& params,
                                       int max_iter, double tol, double damping) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("damping must be in (0, 1]");
  IterationReport rep;
  rep.h = h0;
  const double k = params.k;
  for (int it = 0; it <= max_iter; ++it) {
    const BoundaryLaw f = boundary_law_map(rep.h, params);
    double defect = 0.0;
    for (std::size_t i = 0; i < f.h.size(); ++i)
      defect = std::max(defect, std::abs(rep.h.h[i] - k * f.h[i]));
    rep.defect = defect;
    rep.iterations = it;
    if (!std::isfinite(defect)) return rep;
    if (defect <= tol) {
      rep.converged = true;
      return rep;
    }
    if (it == max_iter) break;
    for (std::size_t i = 0; i < f.h.size(); ++i)
      rep.h.h[i] = (1.0 - damping) * rep.h.h[i] + damping * k * f.h[i];
  }
  return rep;
}

double system_residual(double x, double y, double theta, double r) {
  const double Z = theta * theta * x * x + theta * y * y + r;
  const double e1 = x - (r * x * x + theta * y * y + theta * theta) / Z;
  const double e2 = y - (theta * x * x + r * y * y + theta) / Z;
  return std::max(std::abs(e1), std::abs(e2));
}

std::pair<double, double> polish_fixed_point(double x0, double y0, double theta, double r) {
  const double t2 = theta * theta;
  double x = x0;
  double y = y0;
  double best = system_residual(x, y, theta, r);
  for (int it = 0; it < 30 && best > 0.0; ++it) {
    const double Z = t2 * x * x + theta * y * y + r;
    const double g1 = x * Z - (r * x * x + theta * y * y + t2);
    const double g2 = y * Z - (theta * x * x + r * y * y + theta);
    const double j11 = Z + 2.0 * t2 * x * x - 2.0 * r * x;
    const double j12 = 2.0 * theta * x * y - 2.0 * theta * y;
    const double j21 = 2.0 * t2 * x * y - 2.0 * theta * x;
    const double j22 = Z + 2.0 * theta * y * y - 2.0 * r * y;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double nx = x - (g1 * j22 - g2 * j12) / det;
    const double ny = y - (j11 * g2 - j21 * g1) / det;
    const double res = system_residual(nx, ny, theta, r);
    if (!(res < best)) break;
    x = nx;
    y = ny;
    best = res;
  }
  const double drift_x = std::abs(x - x0) / std::max(1.0, std::abs(x0));
  const double drift_y = std::abs(y - y0) / std::max(1.0, std::abs(y0));
  if (drift_x > 1e-6 || drift_y > 1e-6) return {x0, y0};
  return {x, y};
}

RegionLabel classify_region(double theta, double r) {
  require_positive(theta, r);
  const auto qc = quartic_branch_coefficients(theta, r);
  std::optional<RootSet> quartic;
  if (!quartic_degenerate(qc)) quartic = solve_quartic(qc);
  return label_from(theta, r, depressed_form(theta, r), qc, quartic);
}

std::optional<int> count_from_regions(const RegionLabel& label) {
  using A = ARegion;
  using B = BRegion;
  switch (label.a_region) {
    case A::A1: return 1;
    case A::A2: return 2;
    case A::A3: return 3;
    case A::Boundary: return std::nullopt;
    default: break;
  }
  const int col = [&] {
    switch (label.b_region) {
      case B::B1: return 0;
      case B::B2: return 1;
      case B::B3: return 2;
      case B::B4: return 3;
      case B::B5: return 4;
      default: return -1;
    }
  }();
  if (col < 0) return std::nullopt;
  // rows A4, A5, A6; columns B1..B5; 0 marks a cell the table leaves open
  static constexpr int table[3][5] = {
      {5, 4, 3, 2, 0},
      {6, 5, 4, 3, 2},
      {7, 6, 5, 4, 0},
  };
  const int row = label.a_region == A::A4 ? 0 : label.a_region == A::A5 ? 1 : 2;
  const int n = table[row][col];
  if (n == 0) return std::nullopt;
  return n;
}

ClassificationResult enumerate_tisgm(double theta, double r, const EnumerationOptions& opt) {
  require_positive(theta, r);
  ClassificationResult res;
  res.params = ModelParams{2, 2, theta, r};

  const auto cc = cubic_x1_coefficients(theta, r);
  res.cubic = depress_cubic(cc[0], cc[1], cc[2], cc[3]);
  res.cubic_roots = solve_cubic(cc[0], cc[1], cc[2], cc[3]);

  for (std::size_t i = 0; i < res.cubic_roots.roots.size(); ++i) {
    const double y = res.cubic_roots.roots[i];
    if (!(y > kZeroBand)) continue;
    const double resid = system_residual(1.0, y, theta, r);
    if (resid <= opt.residual_tol) res.fixed_points.push_back({1.0, y, Branch::CubicX1, resid});
  }

  const auto qc = quartic_branch_coefficients(theta, r);
  std::optional<RootSet> quartic;
  if (!quartic_degenerate(qc)) {
    quartic = solve_quartic(qc);
    res.quartic_roots = *quartic;
  }
  res.region = label_from(theta, r, res.cubic, qc, quartic);

  std::vector<FixedPoint> branch2;
  if (quartic) {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    for (double y : quartic->roots) {
      if (!(y > kZeroBand)) continue;
      std::vector<double> xs;
      const double num = theta * y * (t2 - y + r * y - r);
      const double den = -t3 * y + t2 + theta * r * y - r;
      const double den_scale = t3 * y + t2 + theta * r * y + r;
      if (banded_sign(den, den_scale) != Sign::Zero) {
        xs.push_back(num / den);
      } else {
        // x is undetermined by the elimination; take it from the quadratic
        xs = positive_x_roots(x_quadratic(theta, r, y));
      }
      for (double x : xs) {
        if (!(x > 0.0) || !std::isfinite(x)) continue;
        const auto [px, py] = polish_fixed_point(x, y, theta, r);
        const double resid = system_residual(px, py, theta, r);
        if (px > 0.0 && py > 0.0 && resid <= opt.residual_tol) {
          const FixedPoint fp{px, py, Branch::Quartic, resid};
          if (std::none_of(branch2.begin(), branch2.end(),
                           [&](const FixedPoint& o) { return same_point(o, fp); }))
            branch2.push_back(fp);
        }
      }
    }
  }

  const Sign rs = sign_r_minus_3theta2(theta, r);
  res.quartic_gate_holds = !(rs == Sign::Negative && !branch2.empty());

  std::sort(branch2.begin(), branch2.end(),
            [](const FixedPoint& a, const FixedPoint& b) { return a.y < b.y; });
  for (const auto& fp : branch2) {
    if (std::none_of(res.fixed_points.begin(), res.fixed_points.end(),
                     [&](const FixedPoint& o) { return same_point(o, fp); }))
      res.fixed_points.push_back(fp);
  }
  res.N = static_cast<int>(res.fixed_points.size());

  const bool carried_mismatch =
      rs == Sign::Positive && quartic &&
      static_cast<int>(branch2.size()) != res.region.quartic_count;
  res.boundary = res.region.a_region == ARegion::Boundary ||
                 res.region.b_region == BRegion::Boundary || res.cubic.q_sign() == Sign::Zero ||
                 res.cubic_roots.has_multiple_root() || carried_mismatch;
  return res;
}

ModelParams point_on_line(Line line, double param) {
  switch (line) {
    case Line::Potts: return {2, 2, 1.0, param};
    case Line::SOS: return {2, 2, param, 1.0};
    case Line::Square: return {2, 2, param, param * param};
  }
  throw std::invalid_argument("unknown line");
}

int count_on_line(Line line, double param) {
  const ModelParams p = point_on_line(line, param);
  return enumerate_tisgm(p.theta, p.r).N;
}

}  // namespace pottssos
