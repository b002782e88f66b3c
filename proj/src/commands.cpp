#include "pottssos/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "pottssos/chain.hpp"
#include "pottssos/extremality.hpp"
#include "pottssos/treeops.hpp"

namespace pottssos::cli {

using nlohmann::json;

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_g12(v).c_str(), nullptr);
}

namespace {

json num(double v) { return round12(v); }

json params_json(const ModelParams& p) {
  return {{"k", p.k}, {"m", p.m}, {"theta", num(p.theta)}, {"r", num(p.r)}};
}

json root_set_json(const RootSet& rs) {
  json arr = json::array();
  for (std::size_t i = 0; i < rs.roots.size(); ++i)
    arr.push_back({{"value", num(rs.roots[i])}, {"multiplicity", rs.multiplicities[i]}});
  return arr;
}

json measure_json(int index, const FixedPoint& fp, double theta, double r) {
  json j{{"index", index},
         {"x", num(fp.x)},
         {"y", num(fp.y)},
         {"branch", to_string(fp.branch)},
         {"residual", num(fp.residual)}};
  const TransitionKernel kern = build_kernel(fp, theta, r);
  json P = json::array();
  for (const auto& row : kern.P) P.push_back({num(row[0]), num(row[1]), num(row[2])});
  j["kernel"] = {{"P", P}, {"Z", num(kern.Z)}};
  const StationaryLaw nu = stationary_law(kern);
  j["stationary"] = {num(nu.nu[0]), num(nu.nu[1]), num(nu.nu[2])};
  const ExtremalityVerdict v = extremality_verdict(fp, theta, r, 2, index);
  j["eigenvalues"] = {{"lambda1", num(v.spectrum.lambda1)},
                      {"lambda2", num(v.spectrum.lambda2)},
                      {"complex_pair", v.spectrum.complex_pair},
                      {"lambda_max", num(v.lambda_max)},
                      {"Dstar", num(v.spectrum.Dstar)}};
  j["eta"] = num(v.eta);
  j["kappa"] = num(v.kappa);
  j["gamma"] = num(v.gamma);
  j["two_kappa_gamma"] = num(v.two_kappa_gamma);
  j["status"] = to_string(v.status);
  j["heuristic"] = v.heuristic;
  return j;
}

json classify_general(const ModelParams& params) {
  // closed forms exist only for k = m = 2; report the attracting boundary
  // laws reached from a fixed lattice of starting points
  std::vector<BoundaryLaw> found;
  json laws = json::array();
  const int m = params.m;
  const int per_axis = m <= 2 ? 9 : 3;
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    BoundaryLaw h0;
    for (int v : idx) h0.h.push_back(-8.0 + 16.0 * v / (per_axis - 1));
    const IterationReport rep = ti_fixed_point_iterate(h0, params);
    if (rep.converged) {
      bool seen = false;
      for (const auto& f : found) {
        double d = 0.0;
        for (std::size_t i = 0; i < f.h.size(); ++i) d = std::max(d, std::abs(f.h[i] - rep.h.h[i]));
        if (d <= 1e-6) seen = true;
      }
      if (!seen) {
        found.push_back(rep.h);
        json h = json::array();
        for (double v : rep.h.h) h.push_back(num(v));
        laws.push_back({{"h", h}, {"defect", num(rep.defect)}});
      }
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == per_axis) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return {{"params", params_json(params)},
          {"mode", "iteration_only"},
          {"attracting_boundary_laws", laws}};
}

std::vector<double> points(const Range& rg) {
  std::vector<double> out;
  if (rg.steps == 1) return {rg.lo};
  for (int i = 0; i < rg.steps; ++i)
    out.push_back(rg.lo + (rg.hi - rg.lo) * static_cast<double>(i) / (rg.steps - 1));
  return out;
}

std::string scan_row(double theta, double r) {
  const ClassificationResult res = enumerate_tisgm(theta, r);
  int n_ext = 0;
  int n_non = 0;
  int n_und = 0;
  for (std::size_t i = 0; i < res.fixed_points.size(); ++i) {
    const auto v = extremality_verdict(res.fixed_points[i], theta, r, 2, static_cast<int>(i) + 1);
    switch (v.status) {
      case Status::Extreme: ++n_ext; break;
      case Status::NonExtreme: ++n_non; break;
      case Status::Undetermined: ++n_und; break;
    }
  }
  std::ostringstream os;
  os << format_g12(theta) << ',' << format_g12(r) << ',' << res.N << ','
     << to_string(res.region.a_region) << ',' << to_string(res.region.b_region) << ',' << n_ext
     << ',' << n_non << ',' << n_und << ',' << (res.boundary ? 1 : 0) << '\n';
  return os.str();
}

void check_range(const Range& rg, const char* name) {
  if (!(std::isfinite(rg.lo) && std::isfinite(rg.hi) && rg.lo > 0.0))
    throw UsageError(std::string(name) + " range: lo must be finite and > 0");
  if (rg.steps < 1) throw UsageError(std::string(name) + " range: steps must be >= 1");
  if (rg.steps > 1 && !(rg.lo < rg.hi))
    throw UsageError(std::string(name) + " range: lo must be < hi");
}

}  // namespace

json cmd_classify(const ModelParams& params, double residual_tol) {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (params.k != 2 || params.m != 2) return classify_general(params);

  const ClassificationResult res = enumerate_tisgm(params.theta, params.r, {residual_tol});
  json doc;
  doc["params"] = params_json(params);
  doc["region"] = {{"a_region", to_string(res.region.a_region)},
                   {"b_region", to_string(res.region.b_region)},
                   {"quartic_count", res.region.quartic_count}};
  doc["N"] = res.N;
  if (const auto t = count_from_regions(res.region))
    doc["table_N"] = *t;
  else
    doc["table_N"] = nullptr;
  doc["boundary"] = res.boundary;
  doc["cubic"] = {{"p", num(res.cubic.p)},
                  {"q", num(res.cubic.q)},
                  {"Q", num(res.cubic.Q)},
                  {"shift", num(res.cubic.shift)},
                  {"roots", root_set_json(res.cubic_roots)}};
  doc["quartic_roots"] = root_set_json(res.quartic_roots);
  json ms = json::array();
  for (std::size_t i = 0; i < res.fixed_points.size(); ++i)
    ms.push_back(measure_json(static_cast<int>(i) + 1, res.fixed_points[i], params.theta, params.r));
  doc["measures"] = ms;
  return doc;
}

void ScanGrid::validate() const {
  if (!line || *line == Line::SOS || *line == Line::Square) check_range(theta, "theta");
  if (!line || *line == Line::Potts) check_range(r, "r");
}

std::string cmd_scan(const ScanGrid& grid, int jobs) {
  grid.validate();
  std::vector<std::pair<double, double>> pts;
  if (grid.line) {
    const bool potts = *grid.line == Line::Potts;
    for (double v : points(potts ? grid.r : grid.theta)) {
      const ModelParams p = point_on_line(*grid.line, v);
      pts.emplace_back(p.theta, p.r);
    }
  } else {
    for (double t : points(grid.theta))
      for (double r : points(grid.r)) pts.emplace_back(t, r);
  }

  std::vector<std::string> rows(pts.size());
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1) {
    for (std::size_t i = 0; i < pts.size(); ++i) rows[i] = scan_row(pts[i].first, pts[i].second);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < pts.size(); i += workers)
          rows[i] = scan_row(pts[i].first, pts[i].second);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::string out = std::string(kScanHeader) + "\n";
  for (const auto& row : rows) out += row;
  return out;
}

json cmd_thresholds(const std::string& which) {
  std::vector<ThresholdName> names;
  if (which == "all") {
    names = {ThresholdName::ThetaC, ThresholdName::RcAtTheta1, ThresholdName::ThetaKs1,
             ThresholdName::ThetaKs2};
  } else {
    try {
      names = {parse_threshold_name(which)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  json arr = json::array();
  for (ThresholdName n : names) {
    const ThresholdReport rep = find_threshold(n);
    arr.push_back({{"name", to_string(rep.name)},
                   {"value", num(rep.value)},
                   {"bracket", {num(rep.lo), num(rep.hi)}},
                   {"bracket_width", num(rep.hi - rep.lo)},
                   {"search_bracket", {num(rep.search_lo), num(rep.search_hi)}},
                   {"defining_function", rep.defining_function}});
  }
  return {{"thresholds", arr}};
}

VerifyResult cmd_verify(int depth, const ModelParams& params, int trials, std::uint64_t seed) {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (depth < 0) throw UsageError("depth must be >= 0");
  if (trials < 1) throw UsageError("trials must be >= 1");
  const FiniteTree tree = build_tree(params.k, depth);
  std::mt19937_64 rng(seed);
  double max_dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    BoundaryLaw h;
    for (int i = 0; i < params.m; ++i)
      h.h.push_back(-3.0 + 6.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53);
    std::vector<double> exact;
    try {
      exact = exact_root_marginal(tree, params, h);
    } catch (const std::length_error& e) {
      throw UsageError(e.what());
    }
    const auto rec = recursion_root_marginal(depth, params, h);
    for (std::size_t i = 0; i < exact.size(); ++i) max_dev = std::max(max_dev, std::abs(exact[i] - rec[i]));
  }
  VerifyResult out;
  out.pass = max_dev <= kVerifyTol;
  out.report = {{"params", params_json(params)},
                {"depth", depth},
                {"vertices", tree.size()},
                {"trials", trials},
                {"seed", seed},
                {"max_abs_deviation", max_dev},
                {"tolerance", kVerifyTol},
                {"pass", out.pass}};
  return out;
}

std::string cmd_sample(const ModelParams& params, int measure_index, int depth,
                       std::uint64_t n_samples, std::uint64_t seed) {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (params.k != 2 || params.m != 2) throw UsageError("sample supports k = m = 2 only");
  if (depth < 0) throw UsageError("depth must be >= 0");
  const ClassificationResult res = enumerate_tisgm(params.theta, params.r);
  if (measure_index < 1 || measure_index > res.N)
    throw UsageError("measure index " + std::to_string(measure_index) + " outside 1.." +
                     std::to_string(res.N));
  const FixedPoint& fp = res.fixed_points[static_cast<std::size_t>(measure_index - 1)];
  const TransitionKernel kern = build_kernel(fp, params.theta, params.r);
  const StationaryLaw nu = stationary_law(kern);
  const FiniteTree tree = build_tree(2, depth);
  const SampleStats st = sample_chain(tree, kern, nu, seed, n_samples);

  std::ostringstream os;
  os << "generation,spin,count,frequency,stationary\n";
  for (std::size_t g = 0; g < st.generation_counts.size(); ++g) {
    const double total = static_cast<double>(n_samples) * static_cast<double>(tree.generations[g].size());
    for (std::size_t s = 0; s < 3; ++s) {
      const auto c = st.generation_counts[g][s];
      os << g << ',' << s << ',' << c << ','
         << format_g12(total > 0 ? static_cast<double>(c) / total : 0.0) << ','
         << format_g12(nu.nu[s]) << '\n';
    }
  }
  return os.str();
}

}  // namespace pottssos::cli
