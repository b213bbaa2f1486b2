#include "phylomesh/trie.hpp"

#include <algorithm>
#include <numeric>
#include <stack>
#include <stdexcept>

namespace phylomesh {

TrieNode* TrieNode::find_child(uint64_t rank_key, uint64_t differentia_key) const {
  for (const auto& child : children) {
    if (child->rank == static_cast<int64_t>(rank_key) &&
        child->differentia == differentia_key) {
      return child.get();
    }
  }
  return nullptr;
}

void insert_taxon(TrieNode& root, std::span<const Allele> alleles,
                  std::string label, uint64_t annotation_depth) {
  for (size_t i = 1; i < alleles.size(); ++i) {
    if (alleles[i].rank <= alleles[i - 1].rank) {
      throw std::invalid_argument("insert_taxon requires strictly ascending allele ranks");
    }
  }

  // Deepest congruous position: consume alleles while an exact child match
  // exists. Any mismatch (including a rank present in the trie but absent
  // from this annotation) ends the descent and forks here.
  TrieNode* node = &root;
  size_t consumed = 0;
  while (consumed < alleles.size()) {
    TrieNode* child = node->find_child(alleles[consumed].rank, alleles[consumed].differentia);
    if (child == nullptr) break;
    node = child;
    ++consumed;
  }
  for (; consumed < alleles.size(); ++consumed) {
    auto fresh = std::make_unique<TrieNode>();
    fresh->rank = static_cast<int64_t>(alleles[consumed].rank);
    fresh->differentia = alleles[consumed].differentia;
    node->children.push_back(std::move(fresh));
    node = node->children.back().get();
  }
  node->leaves.push_back({std::move(label), annotation_depth, 0});
}

std::unique_ptr<TrieNode> build_trie_from_artifacts(
    std::span<const SurfaceAnnotation> annotations,
    std::span<const std::string> labels) {
  if (annotations.empty() || annotations.size() != labels.size()) {
    throw std::invalid_argument("build_trie_from_artifacts requires matching, nonempty inputs");
  }
  const SurfaceConfig& config = annotations.front().config();
  for (const SurfaceAnnotation& annotation : annotations) {
    if (!(annotation.config() == config)) {
      throw std::invalid_argument("annotations must share one surface configuration");
    }
  }

  std::vector<size_t> order(annotations.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return annotations[a].depth() < annotations[b].depth();
  });

  auto root = std::make_unique<TrieNode>();
  for (const size_t i : order) {
    const auto alleles = annotations[i].extract_alleles();
    insert_taxon(*root, alleles, labels[i], annotations[i].depth());
  }
  return root;
}

void assign_origin_times_naive(TrieNode& root) {
  std::stack<TrieNode*> pending;
  pending.push(&root);
  while (!pending.empty()) {
    TrieNode* node = pending.top();
    pending.pop();
    node->origin_time = node->rank == TrieNode::kTrieRoot ? 0 : node->rank;
    for (TrieLeaf& leaf : node->leaves) {
      leaf.origin_time = static_cast<int64_t>(leaf.annotation_depth);
    }
    for (const auto& child : node->children) pending.push(child.get());
  }
}

PhylogenyTable trie_to_table(const TrieNode& root) {
  PhylogenyTable table;
  uint32_t next_id = 0;

  struct Frame {
    const TrieNode* node;
    int64_t parent_id;
  };
  std::stack<Frame> pending;
  pending.push({&root, kNoAncestor});
  while (!pending.empty()) {
    const Frame frame = pending.top();
    pending.pop();
    const uint32_t id = next_id++;
    table.rows.push_back({id, frame.parent_id, frame.node->origin_time, {}});
    for (const TrieLeaf& leaf : frame.node->leaves) {
      table.rows.push_back({next_id++, static_cast<int64_t>(id), leaf.origin_time, leaf.label});
    }
    // Stack reverses; push children backwards to emit them in insertion order.
    for (auto it = frame.node->children.rbegin(); it != frame.node->children.rend(); ++it) {
      pending.push({it->get(), static_cast<int64_t>(id)});
    }
  }
  return table;
}

}  // namespace phylomesh
