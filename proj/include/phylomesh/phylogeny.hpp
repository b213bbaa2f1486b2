#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phylomesh {

inline constexpr int64_t kNoAncestor = -1;

struct PhylogenyRow {
  uint32_t id = 0;
  int64_t ancestor_id = kNoAncestor;  // kNoAncestor for the root
  int64_t origin_time = 0;
  std::string taxon_label;  // empty for inner nodes

  bool operator==(const PhylogenyRow&) const = default;
};

// Flat ancestor-list phylogeny. Exactly one root row; the ancestor graph is
// a tree; child origin_time >= parent origin_time.
struct PhylogenyTable {
  std::vector<PhylogenyRow> rows;

  bool operator==(const PhylogenyTable&) const = default;
};

// Structural index over a validated table. Construction throws DataError on
// anything that is not a single rooted tree with monotone origin times.
struct TreeIndex {
  explicit TreeIndex(const PhylogenyTable& table);

  const PhylogenyTable& table;
  size_t root = 0;
  std::vector<std::vector<uint32_t>> children;  // by row position
  std::vector<uint32_t> leaves;                 // row positions, childless rows
  std::vector<int64_t> parent;                  // row position of parent, -1 for root
  std::vector<uint32_t> depth_from_root;

  size_t row_of(uint32_t id) const;  // throws DataError on unknown id
  int64_t origin(size_t row) const { return table.rows[row].origin_time; }

 private:
  std::vector<size_t> id_to_row_;
};

// Newick serialization with branch lengths taken from origin-time deltas.
std::string to_newick(const PhylogenyTable& table);

}  // namespace phylomesh
