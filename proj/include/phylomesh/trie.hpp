#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "phylomesh/phylogeny.hpp"
#include "phylomesh/surface.hpp"

namespace phylomesh {

struct TrieLeaf {
  std::string label;
  uint64_t annotation_depth = 0;
  int64_t origin_time = 0;
};

// Reconstruction trie node keyed by (rank, differentia). The root carries
// rank kTrieRoot and stands for the universal common ancestor. Ranks
// strictly increase along every root-to-leaf path, and no two sibling
// inner nodes share a key. Taxa attach as TrieLeaf entries; a node may
// carry any number of children and leaves (polytomies stay polytomies).
struct TrieNode {
  static constexpr int64_t kTrieRoot = -1;

  int64_t rank = kTrieRoot;
  uint64_t differentia = 0;
  int64_t origin_time = 0;
  std::vector<std::unique_ptr<TrieNode>> children;  // insertion order
  std::vector<TrieLeaf> leaves;

  TrieNode* find_child(uint64_t rank_key, uint64_t differentia_key) const;
};

// Descends from the root consuming alleles while an exactly matching child
// exists; the remaining alleles unroll into a fresh unifurcating branch and
// the label attaches as a leaf at the final node. Allele ranks must be
// strictly ascending (std::invalid_argument otherwise).
void insert_taxon(TrieNode& root, std::span<const Allele> alleles,
                  std::string label, uint64_t annotation_depth);

// Inserts all annotations in ascending order of lineage depth (stable on
// ties) and returns the trie root. All annotations must share one surface
// configuration and labels must pair one-to-one with annotations.
std::unique_ptr<TrieNode> build_trie_from_artifacts(
    std::span<const SurfaceAnnotation> annotations,
    std::span<const std::string> labels);

// Naive origin times: the root gets 0, every inner node its allele rank,
// every leaf the depth of its source annotation.
void assign_origin_times_naive(TrieNode& root);

// Depth-first enumeration into a flat table with dense ids from 0 (root
// first); unifurcations are preserved, leaf rows carry the taxon label.
PhylogenyTable trie_to_table(const TrieNode& root);

}  // namespace phylomesh
