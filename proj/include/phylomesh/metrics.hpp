#pragma once

#include <cstdint>

#include "phylomesh/phylogeny.hpp"

namespace phylomesh {

struct PairwiseDistances {
  double mean = 0.0;
  double sum = 0.0;
};

struct MetricsReport {
  double colless_like = 0.0;
  double mean_evolutionary_distinctiveness = 0.0;
  double mean_pairwise_distance = 0.0;
  double sum_pairwise_distance = 0.0;
  double sum_branch_length = 0.0;
  uint64_t leaf_count = 0;
  uint64_t node_count = 0;
};

// Sum over non-root rows of origin_time(row) - origin_time(ancestor).
double sum_branch_length(const PhylogenyTable& table);

// Patristic distance over all unordered leaf pairs, computed exactly via
// per-edge contributions: an edge of length L with x leaves below it lies
// on the path of x * (n - x) pairs. Requires >= 2 leaves.
PairwiseDistances pairwise_distances(const PhylogenyTable& table);

// Fair-proportion evolutionary distinctiveness, averaged over leaves: each
// leaf sums length(e) / leaves_below(e) over its root path.
double mean_evolutionary_distinctiveness(const PhylogenyTable& table);

// Multifurcation-friendly imbalance: sum over nodes with >= 2 children of
// sum_{i<j} |L_i - L_j| of child subtree leaf counts. Unifurcations
// contribute nothing, so collapsing them first is a no-op.
double colless_like_index(const PhylogenyTable& table);

MetricsReport compute_report(const PhylogenyTable& table);

}  // namespace phylomesh
