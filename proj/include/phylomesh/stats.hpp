#pragma once

#include <span>
#include <string>

namespace phylomesh {

enum class Alternative { Less, Greater };  // hypothesis about sample A vs sample B

struct MannWhitneyResult {
  double u_a = 0.0;  // U statistic of sample A (midranks under ties)
  double p_value = 1.0;
  std::string method;  // "exact", "normal_approx", or "degenerate"
  double median_a = 0.0;
  double median_b = 0.0;
};

// One-sided Mann-Whitney U test. Uses the exact null distribution when both
// samples have at most 8 observations and the pooled data is tie-free;
// otherwise the normal approximation with tie correction and continuity
// correction. All-tied pooled data degenerates to p = 1.
MannWhitneyResult mann_whitney_one_sided(std::span<const double> a,
                                         std::span<const double> b,
                                         Alternative alternative);

double median(std::span<const double> values);

}  // namespace phylomesh
