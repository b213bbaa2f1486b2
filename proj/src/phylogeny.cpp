#include "phylomesh/phylogeny.hpp"

#include <algorithm>
#include <stack>

#include "phylomesh/errors.hpp"

namespace phylomesh {

TreeIndex::TreeIndex(const PhylogenyTable& t) : table(t) {
  const size_t n = table.rows.size();
  if (n == 0) throw DataError("phylogeny table is empty");

  uint32_t max_id = 0;
  for (const PhylogenyRow& row : table.rows) max_id = std::max(max_id, row.id);
  if (static_cast<size_t>(max_id) > 4 * n + 16) {
    throw DataError("phylogeny ids are not reasonably dense");
  }
  id_to_row_.assign(static_cast<size_t>(max_id) + 1, SIZE_MAX);
  for (size_t i = 0; i < n; ++i) {
    const uint32_t id = table.rows[i].id;
    if (id_to_row_[id] != SIZE_MAX) throw DataError("duplicate phylogeny id " + std::to_string(id));
    id_to_row_[id] = i;
  }

  children.assign(n, {});
  parent.assign(n, -1);
  bool have_root = false;
  for (size_t i = 0; i < n; ++i) {
    const PhylogenyRow& row = table.rows[i];
    if (row.ancestor_id == kNoAncestor) {
      if (have_root) throw DataError("phylogeny table has multiple roots");
      have_root = true;
      root = i;
      continue;
    }
    const size_t p = row_of(static_cast<uint32_t>(row.ancestor_id));
    parent[i] = static_cast<int64_t>(p);
    children[p].push_back(static_cast<uint32_t>(i));
  }
  if (!have_root) throw DataError("phylogeny table has no root row");

  // Reachability walk: every row once, monotone origin times along edges.
  depth_from_root.assign(n, 0);
  size_t visited = 0;
  std::stack<size_t> pending;
  pending.push(root);
  while (!pending.empty()) {
    const size_t at = pending.top();
    pending.pop();
    ++visited;
    for (const uint32_t child : children[at]) {
      if (table.rows[child].origin_time < table.rows[at].origin_time) {
        throw DataError("phylogeny origin times decrease along an edge");
      }
      depth_from_root[child] = depth_from_root[at] + 1;
      pending.push(child);
    }
  }
  if (visited != n) throw DataError("phylogeny ancestor graph is not a tree");

  for (size_t i = 0; i < n; ++i) {
    if (children[i].empty()) leaves.push_back(static_cast<uint32_t>(i));
  }
}

size_t TreeIndex::row_of(uint32_t id) const {
  if (id >= id_to_row_.size() || id_to_row_[id] == SIZE_MAX) {
    throw DataError("phylogeny references unknown id " + std::to_string(id));
  }
  return id_to_row_[id];
}

namespace {

void append_newick(const TreeIndex& index, size_t row, std::string& out) {
  const auto& kids = index.children[row];
  if (!kids.empty()) {
    out.push_back('(');
    for (size_t i = 0; i < kids.size(); ++i) {
      if (i > 0) out.push_back(',');
      append_newick(index, kids[i], out);
    }
    out.push_back(')');
  }
  out += index.table.rows[row].taxon_label;
  if (index.parent[row] >= 0) {
    const int64_t length =
        index.origin(row) - index.origin(static_cast<size_t>(index.parent[row]));
    out.push_back(':');
    out += std::to_string(length);
  }
}

}  // namespace

std::string to_newick(const PhylogenyTable& table) {
  TreeIndex index(table);
  std::string out;
  append_newick(index, index.root, out);
  out.push_back(';');
  return out;
}

}  // namespace phylomesh
