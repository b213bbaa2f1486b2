#include "phylomesh/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "phylomesh/errors.hpp"

namespace phylomesh {

namespace {

// Row positions ordered parents-before-children.
std::vector<size_t> preorder(const TreeIndex& index) {
  std::vector<size_t> order;
  order.reserve(index.table.rows.size());
  std::vector<size_t> pending{index.root};
  while (!pending.empty()) {
    const size_t at = pending.back();
    pending.pop_back();
    order.push_back(at);
    for (const uint32_t child : index.children[at]) pending.push_back(child);
  }
  return order;
}

std::vector<uint64_t> leaves_below(const TreeIndex& index,
                                   const std::vector<size_t>& order) {
  std::vector<uint64_t> counts(index.table.rows.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const size_t at = *it;
    if (index.children[at].empty()) {
      counts[at] = 1;
    } else {
      for (const uint32_t child : index.children[at]) counts[at] += counts[child];
    }
  }
  return counts;
}

}  // namespace

double sum_branch_length(const PhylogenyTable& table) {
  const TreeIndex index(table);
  int64_t total = 0;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (index.parent[i] < 0) continue;
    total += index.origin(i) - index.origin(static_cast<size_t>(index.parent[i]));
  }
  return static_cast<double>(total);
}

PairwiseDistances pairwise_distances(const PhylogenyTable& table) {
  const TreeIndex index(table);
  const uint64_t n = index.leaves.size();
  if (n < 2) throw std::invalid_argument("pairwise_distances requires at least two leaves");

  const auto order = preorder(index);
  const auto below = leaves_below(index, order);

  __int128 total = 0;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (index.parent[i] < 0) continue;
    const int64_t length = index.origin(i) - index.origin(static_cast<size_t>(index.parent[i]));
    total += static_cast<__int128>(length) *
             static_cast<__int128>(below[i] * (n - below[i]));
  }

  PairwiseDistances out;
  out.sum = static_cast<double>(total);
  out.mean = out.sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
  return out;
}

double mean_evolutionary_distinctiveness(const PhylogenyTable& table) {
  const TreeIndex index(table);
  if (index.leaves.empty()) {
    throw std::invalid_argument("mean_evolutionary_distinctiveness requires a leaf");
  }
  const auto order = preorder(index);
  const auto below = leaves_below(index, order);

  // Accumulate the fair-proportion share along root-to-leaf paths.
  std::vector<double> share(table.rows.size(), 0.0);
  double total = 0.0;
  for (const size_t at : order) {
    if (index.parent[at] >= 0) {
      const auto parent = static_cast<size_t>(index.parent[at]);
      const auto length = static_cast<double>(index.origin(at) - index.origin(parent));
      share[at] = share[parent] + length / static_cast<double>(below[at]);
    }
    if (index.children[at].empty()) total += share[at];
  }
  return total / static_cast<double>(index.leaves.size());
}

double colless_like_index(const PhylogenyTable& table) {
  const TreeIndex index(table);
  const auto order = preorder(index);
  const auto below = leaves_below(index, order);

  uint64_t total = 0;
  std::vector<uint64_t> sizes;
  for (size_t at = 0; at < table.rows.size(); ++at) {
    const auto& kids = index.children[at];
    if (kids.size() < 2) continue;
    sizes.clear();
    for (const uint32_t child : kids) sizes.push_back(below[child]);
    std::sort(sizes.begin(), sizes.end());
    // sum_{i<j} (s_j - s_i) with sizes ascending
    const auto k = static_cast<int64_t>(sizes.size());
    int64_t node_sum = 0;
    for (int64_t i = 0; i < k; ++i) {
      node_sum += (2 * i - (k - 1)) * static_cast<int64_t>(sizes[i]);
    }
    total += static_cast<uint64_t>(node_sum);
  }
  return static_cast<double>(total);
}

MetricsReport compute_report(const PhylogenyTable& table) {
  const TreeIndex index(table);
  MetricsReport report;
  report.node_count = table.rows.size();
  report.leaf_count = index.leaves.size();
  report.sum_branch_length = sum_branch_length(table);
  report.mean_evolutionary_distinctiveness = mean_evolutionary_distinctiveness(table);
  report.colless_like = colless_like_index(table);
  const PairwiseDistances distances = pairwise_distances(table);
  report.mean_pairwise_distance = distances.mean;
  report.sum_pairwise_distance = distances.sum;
  return report;
}

}  // namespace phylomesh
