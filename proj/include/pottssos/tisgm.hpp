// Translation-invariant boundary laws.
//
// For general (k, m) the boundary law h in R^m solves h = k F(h); this is
// available through boundary_law_map / ti_fixed_point_iterate. For k = m = 2
// the fixed points are enumerated exactly. Writing x = exp(h_0 / 2),
// y = exp(h_1 / 2), they are the positive solutions of
//
//   x = (r x^2 + theta y^2 + theta^2) / Z,
//   y = (theta x^2 + r y^2 + theta)  / Z,   Z = theta^2 x^2 + theta y^2 + r,
//
// which split into the x = 1 cubic branch and the x != 1 quartic branch.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pottssos/model.hpp"
#include "pottssos/polyroot.hpp"

namespace pottssos {

/// Field components h_0..h_{m-1}, each relative to h_m.
struct BoundaryLaw {
  std::vector<double> h;
};

enum class Branch { CubicX1, Quartic };

struct FixedPoint {
  double x = 1.0;
  double y = 1.0;
  Branch branch = Branch::CubicX1;
  double residual = 0.0;

  /// (2 ln x, 2 ln y)
  BoundaryLaw boundary_law() const;
};

enum class ARegion { A1, A2, A3, A4, A5, A6, Boundary };
enum class BRegion { B1, B2, B3, B4, B5, NotApplicable, Boundary };

struct RegionLabel {
  ARegion a_region = ARegion::Boundary;
  BRegion b_region = BRegion::NotApplicable;
  /// Positive quartic roots that admit a positive x, with multiplicity.
  int quartic_count = 0;
};

std::string to_string(ARegion a);
std::string to_string(BRegion b);
std::string to_string(Branch b);

struct ClassificationResult {
  ModelParams params;
  RegionLabel region;
  std::vector<FixedPoint> fixed_points;  ///< cubic branch by ascending y, then quartic branch
  int N = 0;
  DepressedCubicAnalysis cubic;
  RootSet cubic_roots;
  RootSet quartic_roots;
  /// Some classification quantity sits inside the zero band, or a multiple
  /// root does not carry the number of fixed points its multiplicity implies.
  bool boundary = false;
  /// False only if the quartic branch produced a solution although r <= 3 theta^2.
  bool quartic_gate_holds = true;
};

/// Component-wise F(h, m, theta, r); the result has the dimension of h.
BoundaryLaw boundary_law_map(const BoundaryLaw& h, const ModelParams& params);

struct IterationReport {
  BoundaryLaw h;
  bool converged = false;
  int iterations = 0;
  double defect = 0.0;  ///< || h - k F(h) ||_inf at the returned h
};

/// Damped iteration h <- (1 - damping) h + damping k F(h).
IterationReport ti_fixed_point_iterate(const BoundaryLaw& h0, const ModelParams& params,
                                       int max_iter = 20000, double tol = 1e-12,
                                       double damping = 0.5);

/// max |defect| of the k = m = 2 fixed-point equations at (x, y).
double system_residual(double x, double y, double theta, double r);

/// Newton refinement of (x, y) on the k = m = 2 system; returns the input
/// unchanged when Newton drifts away.
std::pair<double, double> polish_fixed_point(double x, double y, double theta, double r);

struct EnumerationOptions {
  double residual_tol = 1e-8;
};

/// All TISGM fixed points at k = m = 2. Throws std::invalid_argument for
/// non-positive theta or r.
ClassificationResult enumerate_tisgm(double theta, double r, const EnumerationOptions& opt = {});

RegionLabel classify_region(double theta, double r);

/// Measure count predicted by the A/B region table; nullopt for boundary
/// labels and cells the table leaves open (A4 with B5, A6 with B5).
std::optional<int> count_from_regions(const RegionLabel& label);

enum class Line { Potts, SOS, Square };

std::string to_string(Line line);
/// Potts: (theta = 1, r = param); SOS: (param, r = 1); Square: (param, param^2).
ModelParams point_on_line(Line line, double param);
int count_on_line(Line line, double param);

}  // namespace pottssos
