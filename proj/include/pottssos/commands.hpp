// Implementations behind the potts_sos command-line tool. Each command
// returns its document instead of printing so it can be tested directly.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pottssos/model.hpp"
#include "pottssos/tisgm.hpp"

namespace pottssos::cli {

/// Bad flags or parameters; the tool exits with status 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

/// "%.12g"
std::string format_g12(double v);
/// v rounded to 12 significant digits
double round12(double v);

nlohmann::json cmd_classify(const ModelParams& params, double residual_tol = 1e-8);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;  ///< number of points; 1 means lo only
};

struct ScanGrid {
  Range theta;
  Range r;
  std::optional<Line> line;  ///< potts scans r, sos and square scan theta

  void validate() const;
};

inline constexpr const char* kScanHeader =
    "theta,r,N,a_region,b_region,n_extreme,n_nonextreme,n_undetermined,boundary_flag";

/// CSV text, theta-major row order regardless of jobs.
std::string cmd_scan(const ScanGrid& grid, int jobs = 1);

/// which: a threshold name or "all".
nlohmann::json cmd_thresholds(const std::string& which);

struct VerifyResult {
  nlohmann::json report;
  bool pass = false;
};

inline constexpr double kVerifyTol = 1e-10;

VerifyResult cmd_verify(int depth, const ModelParams& params, int trials, std::uint64_t seed);

/// CSV: generation,spin,count,frequency,stationary
std::string cmd_sample(const ModelParams& params, int measure_index, int depth,
                       std::uint64_t n_samples, std::uint64_t seed);

}  // namespace pottssos::cli
