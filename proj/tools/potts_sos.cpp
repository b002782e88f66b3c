// potts_sos: classify, scan, thresholds, verify and sample for the Potts-SOS
// model on the Cayley tree. JSON goes to stdout, CSV to --out or stdout.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pottssos/commands.hpp"
#include "pottssos/model.hpp"

namespace {

using namespace pottssos;
using namespace pottssos::cli;

struct ParamFlags {
  std::optional<double> theta;
  std::optional<double> r;
  std::optional<double> J;
  std::optional<double> Jp;
  std::optional<double> beta;
  int k = 2;
  int m = 2;

  void add_to(CLI::App* app) {
    app->add_option("--theta", theta, "edge activity exp(J beta)");
    app->add_option("--r", r, "diagonal activity exp(J_p beta)");
    app->add_option("--J", J, "SOS coupling (with --Jp and --beta instead of --theta/--r)");
    app->add_option("--Jp", Jp, "Potts coupling");
    app->add_option("--beta", beta, "inverse temperature");
    app->add_option("--k", k, "tree order")->capture_default_str();
    app->add_option("--m", m, "largest spin value")->capture_default_str();
  }

  ModelParams resolve() const {
    const bool activities = theta || r;
    const bool couplings = J || Jp || beta;
    if (activities && couplings) throw UsageError("give either --theta/--r or --J/--Jp/--beta, not both");
    ModelParams p;
    p.k = k;
    p.m = m;
    if (couplings) {
      if (!(J && Jp && beta)) throw UsageError("--J, --Jp and --beta must be given together");
      try {
        const Activities a = activities_from_couplings({*J, *Jp, *beta});
        p.theta = a.theta;
        p.r = a.r;
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    } else {
      if (!(theta && r)) throw UsageError("--theta and --r are required");
      p.theta = *theta;
      p.r = *r;
    }
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

Range to_range(const std::vector<double>& v, const char* name) {
  if (v.size() != 3) throw UsageError(std::string(name) + " needs LO HI STEPS");
  if (v[2] != static_cast<double>(static_cast<int>(v[2])))
    throw UsageError(std::string(name) + ": STEPS must be an integer");
  return {v[0], v[1], static_cast<int>(v[2])};
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text;
  if (!f) throw UsageError("write failed for " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TISGM enumeration and extremality for the Potts-SOS model on the Cayley tree"};
  app.require_subcommand(1);

  ParamFlags cls_p;
  double tol = 1e-8;
  auto* classify = app.add_subcommand("classify", "all translation-invariant measures at one point (JSON)");
  cls_p.add_to(classify);
  classify->add_option("--tol", tol, "fixed-point residual tolerance")->capture_default_str();

  std::vector<double> theta_range;
  std::vector<double> r_range;
  std::string line_name;
  std::string scan_out;
  int jobs = 1;
  auto* scan = app.add_subcommand("scan", "grid or line scan (CSV)");
  scan->add_option("--theta-range", theta_range, "LO HI STEPS")->expected(3);
  scan->add_option("--r-range", r_range, "LO HI STEPS")->expected(3);
  scan->add_option("--line", line_name, "potts (scans r), sos or square (scan theta)")
      ->check(CLI::IsMember({"potts", "sos", "square"}));
  scan->add_option("--out", scan_out, "output file (default stdout)");
  scan->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  std::string which = "all";
  auto* thresholds = app.add_subcommand("thresholds", "critical parameter values (JSON)");
  thresholds->add_option("--which", which, "theta_c, r_c, theta_ks1, theta_ks2 or all")
      ->capture_default_str();

  ParamFlags ver_p;
  int depth = 2;
  int trials = 20;
  std::uint64_t ver_seed = 1;
  auto* verify = app.add_subcommand("verify", "exact finite-tree marginal vs boundary-law recursion");
  ver_p.add_to(verify);
  verify->add_option("--depth", depth, "tree depth")->capture_default_str();
  verify->add_option("--trials", trials, "random boundary fields")->capture_default_str();
  verify->add_option("--seed", ver_seed, "RNG seed")->capture_default_str();

  ParamFlags smp_p;
  int measure = 1;
  int smp_depth = 3;
  std::uint64_t n = 100000;
  std::uint64_t smp_seed = 1;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "tree-indexed Markov chain samples (CSV)");
  smp_p.add_to(sample);
  sample->add_option("--measure", measure, "1-based index into the classify measure list")
      ->capture_default_str();
  sample->add_option("--depth", smp_depth, "tree depth")->capture_default_str();
  sample->add_option("--n", n, "number of samples")->capture_default_str();
  sample->add_option("--seed", smp_seed, "RNG seed")->capture_default_str();
  sample->add_option("--out", sample_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*classify) {
      std::cout << cmd_classify(cls_p.resolve(), tol).dump(2) << '\n';
    } else if (*scan) {
      ScanGrid grid;
      if (!line_name.empty()) {
        grid.line = line_name == "potts" ? Line::Potts : line_name == "sos" ? Line::SOS : Line::Square;
        if (*grid.line == Line::Potts) {
          grid.r = to_range(r_range, "--r-range");
        } else {
          grid.theta = to_range(theta_range, "--theta-range");
        }
      } else {
        grid.theta = to_range(theta_range, "--theta-range");
        grid.r = to_range(r_range, "--r-range");
      }
      if (jobs < 1) throw UsageError("--jobs must be >= 1");
      emit_text(cmd_scan(grid, jobs), scan_out);
    } else if (*thresholds) {
      std::cout << cmd_thresholds(which).dump(2) << '\n';
    } else if (*verify) {
      const VerifyResult res = cmd_verify(depth, ver_p.resolve(), trials, ver_seed);
      std::cout << res.report.dump(2) << '\n';
      return res.pass ? kExitOk : kExitVerification;
    } else if (*sample) {
      emit_text(cmd_sample(smp_p.resolve(), measure, smp_depth, n, smp_seed), sample_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitOk;
}
