#include "phylomesh/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace phylomesh {

double median(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t mid = sorted.size() / 2;
  return sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Counts of arrangements per U value for tie-free samples of sizes (m, n).
// Recurrence on the largest pooled observation: coming from A it beats all
// j B's (u - j), coming from B it adds nothing (u unchanged).
std::vector<double> exact_u_counts(size_t m, size_t n) {
  std::vector<std::vector<std::vector<double>>> table(
      m + 1, std::vector<std::vector<double>>(n + 1));
  for (size_t i = 0; i <= m; ++i) {
    for (size_t j = 0; j <= n; ++j) {
      auto& cell = table[i][j];
      cell.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        cell[0] = 1.0;
        continue;
      }
      for (size_t u = 0; u <= i * j; ++u) {
        double ways = 0.0;
        if (u >= j) ways += table[i - 1][j][u - j];
        if (u <= i * (j - 1)) ways += table[i][j - 1][u];
        cell[u] = ways;
      }
    }
  }
  return table[m][n];
}

}  // namespace

MannWhitneyResult mann_whitney_one_sided(std::span<const double> a,
                                         std::span<const double> b,
                                         Alternative alternative) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("mann_whitney_one_sided requires nonempty samples");
  }
  const size_t m = a.size();
  const size_t n = b.size();
  const size_t total = m + n;

  struct Tagged {
    double value;
    bool from_a;
  };
  std::vector<Tagged> pooled;
  pooled.reserve(total);
  for (const double v : a) pooled.push_back({v, true});
  for (const double v : b) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

  // Midranks; track tie group sizes for the variance correction.
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  bool any_ties = false;
  for (size_t i = 0; i < total;) {
    size_t j = i;
    while (j < total && pooled[j].value == pooled[i].value) ++j;
    const auto group = static_cast<double>(j - i);
    if (group > 1.0) {
      any_ties = true;
      tie_term += group * group * group - group;
    }
    const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (size_t k = i; k < j; ++k) {
      if (pooled[k].from_a) rank_sum_a += midrank;
    }
    i = j;
  }

  MannWhitneyResult result;
  result.median_a = median(a);
  result.median_b = median(b);
  result.u_a = rank_sum_a - static_cast<double>(m) * (static_cast<double>(m) + 1.0) / 2.0;

  const double mn = static_cast<double>(m) * static_cast<double>(n);
  if (!any_ties && m <= 8 && n <= 8) {
    const auto counts = exact_u_counts(m, n);
    double arrangements = 0.0;
    for (const double c : counts) arrangements += c;
    const auto u_obs = static_cast<size_t>(std::llround(result.u_a));
    double tail = 0.0;
    if (alternative == Alternative::Greater) {
      for (size_t u = u_obs; u < counts.size(); ++u) tail += counts[u];
    } else {
      for (size_t u = 0; u <= u_obs; ++u) tail += counts[u];
    }
    result.p_value = tail / arrangements;
    result.method = "exact";
    return result;
  }

  const double total_d = static_cast<double>(total);
  double variance = mn / 12.0 *
                    ((total_d + 1.0) - tie_term / (total_d * (total_d - 1.0)));
  if (variance <= 0.0) {
    // Pooled sample is one big tie; no ordering evidence either way.
    result.p_value = 1.0;
    result.method = "degenerate";
    return result;
  }
  const double sigma = std::sqrt(variance);
  const double mu = mn / 2.0;
  if (alternative == Alternative::Greater) {
    result.p_value = 1.0 - normal_cdf((result.u_a - mu - 0.5) / sigma);
  } else {
    result.p_value = normal_cdf((result.u_a - mu + 0.5) / sigma);
  }
  result.method = "normal_approx";
  return result;
}

}  // namespace phylomesh
