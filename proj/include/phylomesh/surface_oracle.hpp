#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phylomesh/surface.hpp"

namespace phylomesh {

// Brute-force reference for surface placement. Simulates every deposition
// one at a time, applying the eviction rule literally: for a steady store,
// scan the buffer for the smallest resident rank congruent to 2^(e-1)
// modulo 2^e and overwrite it. Shares no code path with
// assign_storage_site / lookup_resident_times, which must agree with it
// exactly. O(num_sites) per step, so intended for test-scale depths.
class ReplayOracle {
 public:
  ReplayOracle(SurfacePolicy policy, uint32_t num_sites);

  // Applies the next deposition; returns the site written, or nullopt when
  // the deposition is dropped.
  std::optional<uint32_t> step();

  uint64_t time() const { return time_; }

  // Current occupancy as (site, rank) pairs sorted by site; unwritten
  // sites omitted.
  std::vector<SiteRank> occupancy() const;

  // Retained ranks, ascending.
  std::vector<uint64_t> retained_ranks() const;

 private:
  SurfacePolicy policy_;
  uint32_t num_sites_;
  uint64_t time_ = 0;
  std::vector<bool> occupied_;
  std::vector<uint64_t> rank_at_site_;
};

// Ground-truth occupancy map after `depth` depositions (fresh replay).
std::vector<SiteRank> replay_oracle(SurfacePolicy policy, uint32_t num_sites,
                                    uint64_t depth);

}  // namespace phylomesh
