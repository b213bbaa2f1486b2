#include "phylomesh/pedigree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "phylomesh/errors.hpp"

namespace phylomesh {

PedigreeIndex::PedigreeIndex(std::span<const PedigreeRecord> records) {
  nodes_.reserve(records.size());
  for (const PedigreeRecord& record : records) {
    nodes_[record.child_id] = {record.parent_id, record.birth_generation};
  }
}

uint64_t PedigreeIndex::birth_generation(uint64_t id) const {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw std::invalid_argument("pedigree has no record for id " + std::to_string(id));
  }
  return it->second.birth;
}

std::optional<uint64_t> PedigreeIndex::mrca_individual(uint64_t a, uint64_t b) const {
  std::unordered_set<uint64_t> ancestors_of_a;
  uint64_t at = a;
  for (;;) {
    ancestors_of_a.insert(at);
    const auto it = nodes_.find(at);
    if (it == nodes_.end()) {
      throw std::invalid_argument("pedigree has no record for id " + std::to_string(at));
    }
    if (it->second.parent == at) break;  // founder
    at = it->second.parent;
  }
  // Common ancestors of two nodes in a tree form a chain, so the first hit
  // walking upward from b is the most recent one.
  at = b;
  for (;;) {
    if (ancestors_of_a.count(at) != 0) return at;
    const auto it = nodes_.find(at);
    if (it == nodes_.end()) {
      throw std::invalid_argument("pedigree has no record for id " + std::to_string(at));
    }
    if (it->second.parent == at) return std::nullopt;
    at = it->second.parent;
  }
}

uint64_t PedigreeIndex::true_mrca_rank(uint64_t a, uint64_t b) const {
  const auto mrca = mrca_individual(a, b);
  if (!mrca) return 0;
  const uint64_t birth = birth_generation(*mrca);
  return birth == 0 ? 0 : birth - 1;
}

double PairErrorStats::fraction_within(double tolerance) const {
  if (abs_errors_sorted.empty()) return 1.0;
  const auto it =
      std::upper_bound(abs_errors_sorted.begin(), abs_errors_sorted.end(), tolerance);
  return static_cast<double>(it - abs_errors_sorted.begin()) /
         static_cast<double>(abs_errors_sorted.size());
}

uint64_t lineage_id_from_label(const std::string& label) {
  const size_t pos = label.rfind('_');
  const size_t start = pos == std::string::npos ? 0 : pos + 1;
  uint64_t value = 0;
  const char* first = label.data() + start;
  const char* last = label.data() + label.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("taxon label '" + label + "' carries no lineage id");
  }
  return value;
}

PairErrorStats compare_to_pedigree(const PhylogenyTable& table,
                                   std::span<const PedigreeRecord> pedigree,
                                   uint64_t pair_sample, RngStream& rng) {
  const TreeIndex index(table);
  const PedigreeIndex exact(pedigree);

  const auto& leaves = index.leaves;
  const uint64_t n = leaves.size();
  if (n < 2) throw std::invalid_argument("compare_to_pedigree requires at least two leaves");

  std::vector<uint64_t> leaf_lineages(n);
  for (uint64_t i = 0; i < n; ++i) {
    leaf_lineages[i] = lineage_id_from_label(table.rows[leaves[i]].taxon_label);
    if (!exact.contains(leaf_lineages[i])) {
      throw std::invalid_argument("leaf lineage " + std::to_string(leaf_lineages[i]) +
                                  " is absent from the pedigree");
    }
  }

  auto lca_origin = [&](size_t u, size_t v) -> int64_t {
    while (index.depth_from_root[u] > index.depth_from_root[v]) {
      u = static_cast<size_t>(index.parent[u]);
    }
    while (index.depth_from_root[v] > index.depth_from_root[u]) {
      v = static_cast<size_t>(index.parent[v]);
    }
    while (u != v) {
      u = static_cast<size_t>(index.parent[u]);
      v = static_cast<size_t>(index.parent[v]);
    }
    return index.origin(u);
  };

  std::vector<std::pair<uint64_t, uint64_t>> pairs;
  const uint64_t total_pairs = n * (n - 1) / 2;
  if (pair_sample >= total_pairs) {
    pairs.reserve(total_pairs);
    for (uint64_t i = 0; i < n; ++i) {
      for (uint64_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
  } else {
    std::unordered_set<uint64_t> seen;
    while (pairs.size() < pair_sample) {
      uint64_t i = rng.uniform_below(n);
      uint64_t j = rng.uniform_below(n);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (seen.insert(i * n + j).second) pairs.emplace_back(i, j);
    }
  }

  PairErrorStats stats;
  stats.pair_count = pairs.size();
  stats.abs_errors_sorted.reserve(pairs.size());
  double signed_sum = 0.0;
  for (const auto& [i, j] : pairs) {
    const auto reconstructed = static_cast<double>(lca_origin(leaves[i], leaves[j]));
    const auto truth =
        static_cast<double>(exact.true_mrca_rank(leaf_lineages[i], leaf_lineages[j]));
    const double error = reconstructed - truth;
    signed_sum += error;
    stats.abs_errors_sorted.push_back(std::fabs(error));
  }
  std::sort(stats.abs_errors_sorted.begin(), stats.abs_errors_sorted.end());
  stats.mean_signed = signed_sum / static_cast<double>(pairs.size());
  stats.max_abs = stats.abs_errors_sorted.back();
  const size_t mid = stats.abs_errors_sorted.size() / 2;
  stats.median_abs = stats.abs_errors_sorted.size() % 2 == 1
                         ? stats.abs_errors_sorted[mid]
                         : 0.5 * (stats.abs_errors_sorted[mid - 1] + stats.abs_errors_sorted[mid]);
  return stats;
}

}  // namespace phylomesh
