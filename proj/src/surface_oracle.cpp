#include "phylomesh/surface_oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace phylomesh {

ReplayOracle::ReplayOracle(SurfacePolicy policy, uint32_t num_sites)
    : policy_(policy),
      num_sites_(num_sites),
      occupied_(num_sites, false),
      rank_at_site_(num_sites, 0) {
  SurfaceConfig probe{policy, num_sites, 1};
  probe.validate();
}

std::optional<uint32_t> ReplayOracle::step() {
  const uint64_t t = time_++;
  std::optional<uint32_t> site;

  if (policy_ == SurfacePolicy::Ring) {
    site = static_cast<uint32_t>(t % num_sites_);
  } else if (t < num_sites_) {
    site = static_cast<uint32_t>(t);
  } else {
    const auto epoch = static_cast<unsigned>(
        std::bit_width(t) - std::bit_width(static_cast<uint64_t>(num_sites_)) + 1);
    const uint64_t grain = 1ull << epoch;
    if (t % grain == 0) {
      // Evict the smallest resident rank == 2^(e-1) (mod 2^e).
      const uint64_t half = grain >> 1;
      std::optional<uint32_t> victim;
      for (uint32_t s = 0; s < num_sites_; ++s) {
        if (!occupied_[s] || rank_at_site_[s] % grain != half) continue;
        if (!victim || rank_at_site_[s] < rank_at_site_[*victim]) victim = s;
      }
      if (!victim) throw std::logic_error("steady replay found no eviction candidate");
      site = victim;
    }
  }

  if (site) {
    occupied_[*site] = true;
    rank_at_site_[*site] = t;
  }
  return site;
}

std::vector<SiteRank> ReplayOracle::occupancy() const {
  std::vector<SiteRank> out;
  for (uint32_t s = 0; s < num_sites_; ++s) {
    if (occupied_[s]) out.push_back({s, rank_at_site_[s]});
  }
  return out;
}

std::vector<uint64_t> ReplayOracle::retained_ranks() const {
  std::vector<uint64_t> ranks;
  for (uint32_t s = 0; s < num_sites_; ++s) {
    if (occupied_[s]) ranks.push_back(rank_at_site_[s]);
  }
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

std::vector<SiteRank> replay_oracle(SurfacePolicy policy, uint32_t num_sites,
                                    uint64_t depth) {
  ReplayOracle oracle(policy, num_sites);
  for (uint64_t t = 0; t < depth; ++t) oracle.step();
  return oracle.occupancy();
}

}  // namespace phylomesh
