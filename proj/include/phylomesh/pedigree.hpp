#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "phylomesh/island.hpp"
#include "phylomesh/phylogeny.hpp"
#include "phylomesh/rng.hpp"

namespace phylomesh {

// Exact ancestry lookup over a birth log.
class PedigreeIndex {
 public:
  explicit PedigreeIndex(std::span<const PedigreeRecord> records);

  bool contains(uint64_t id) const { return nodes_.count(id) != 0; }

  // Most recent common ancestor individual of two lineages; nullopt when
  // they descend from different founders.
  std::optional<uint64_t> mrca_individual(uint64_t a, uint64_t b) const;

  // Ground-truth coalescence on the deposition-rank scale: the rank of the
  // MRCA individual's final stratum, i.e. its birth generation minus one.
  // Founder MRCAs and fully disjoint lineages both map to rank 0, matching
  // the reconstruction's universal-root convention.
  uint64_t true_mrca_rank(uint64_t a, uint64_t b) const;

  uint64_t birth_generation(uint64_t id) const;

 private:
  struct Node {
    uint64_t parent;
    uint64_t birth;
  };
  std::unordered_map<uint64_t, Node> nodes_;
};

struct PairErrorStats {
  uint64_t pair_count = 0;
  double mean_signed = 0.0;  // reconstructed minus true
  double median_abs = 0.0;
  double max_abs = 0.0;
  std::vector<double> abs_errors_sorted;

  double fraction_within(double tolerance) const;
};

// Quantifies reconstruction error against exact tracking. For pair_sample
// uniformly sampled leaf pairs (all pairs when the budget covers them),
// compares the reconstructed MRCA origin time with the pedigree's
// true_mrca_rank. Leaf labels must end in "_<lineage_id>"; unknown ids are
// an argument error.
PairErrorStats compare_to_pedigree(const PhylogenyTable& table,
                                   std::span<const PedigreeRecord> pedigree,
                                   uint64_t pair_sample, RngStream& rng);

// Lineage id encoded at the tail of a reconstruction taxon label.
uint64_t lineage_id_from_label(const std::string& label);

}  // namespace phylomesh
