#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace phylomesh {

// Placement policy for the fixed-width fingerprint surface.
//
// Ring keeps the most recent `num_sites` fingerprints (last-writer-wins,
// modulo the site count). Steady keeps fingerprints approximately evenly
// spaced across all elapsed time using an epoch-doubling rule:
//
//   * epoch 0 covers depositions T in [0, S) and stores at site T;
//   * epoch e >= 1 covers T in [S*2^(e-1), S*2^e) with grain g = 2^e; a
//     deposition is stored iff T % g == 0, all others are dropped;
//   * the k-th store of epoch e (k = (T - S*2^(e-1)) / g) overwrites the
//     site holding the (k+1)-th smallest rank congruent to 2^(e-1) mod 2^e
//     among the ranks retained when the epoch began.
//
// Every retained rank was itself stored at its own deposition, which gives
// the O(log T) site computation in assign_storage_site: the evicted rank's
// location is found by re-running the rule at that earlier (strictly
// smaller) time.
enum class SurfacePolicy : uint8_t { Steady, Ring };

struct SurfaceConfig {
  SurfacePolicy policy = SurfacePolicy::Steady;
  uint32_t num_sites = 64;
  uint32_t differentia_width = 1;  // bits per site; one of {1, 8, 16, 32, 64}

  // Throws ConfigError: Steady requires num_sites to be a power of two >= 2;
  // Ring accepts any num_sites >= 1.
  void validate() const;

  uint64_t differentia_mask() const {
    return differentia_width >= 64 ? ~0ull : (1ull << differentia_width) - 1;
  }
  // Bytes of packed site payload, excluding the depth counter.
  size_t payload_bytes() const {
    return (static_cast<size_t>(num_sites) * differentia_width + 7) / 8;
  }

  bool operator==(const SurfaceConfig&) const = default;
};

// A fingerprint paired with the generation it was deposited at.
struct Allele {
  uint64_t rank = 0;
  uint64_t differentia = 0;
  bool operator==(const Allele&) const = default;
};

struct SiteRank {
  uint32_t site = 0;
  uint64_t rank = 0;
  bool operator==(const SiteRank&) const = default;
};

// Site written by deposition `time`, or nullopt when the deposition is
// dropped by the policy. Pure function of its arguments; O(log time).
std::optional<uint32_t> assign_storage_site(SurfacePolicy policy,
                                            uint32_t num_sites, uint64_t time);

// Deposition time of the current resident of every occupied site after
// `depth` depositions, sorted by site. Sites never written are omitted.
// Pure function of its arguments; O(num_sites * log depth).
std::vector<SiteRank> lookup_resident_times(SurfacePolicy policy,
                                            uint32_t num_sites, uint64_t depth);

// Fixed-width heritable fingerprint buffer. Values are packed at
// differentia_width bits per site; the depth counter records how many
// depositions have elapsed, which is all positional inference needs.
class SurfaceAnnotation {
 public:
  SurfaceAnnotation() = default;
  explicit SurfaceAnnotation(const SurfaceConfig& config);

  // Writes `differentia` at the policy-assigned site (or drops it) and
  // advances depth by one. Throws std::invalid_argument if the value does
  // not fit in differentia_width bits.
  void deposit(uint64_t differentia);

  uint64_t depth() const { return depth_; }
  const SurfaceConfig& config() const { return config_; }
  uint64_t site_value(uint32_t site) const;

  // (rank, differentia) pairs for all occupied sites, rank ascending.
  std::vector<Allele> extract_alleles() const;

  // Export layout: sites packed little-endian in site order at
  // differentia_width bits each, padded to whole bytes, then depth as a
  // 32-bit little-endian unsigned integer.
  std::vector<uint8_t> to_bytes() const;
  static SurfaceAnnotation from_bytes(const SurfaceConfig& config,
                                      const std::vector<uint8_t>& bytes);

  bool operator==(const SurfaceAnnotation&) const = default;

 private:
  void set_site(uint32_t site, uint64_t value);

  SurfaceConfig config_;
  std::vector<uint64_t> words_;
  uint64_t depth_ = 0;
};

}  // namespace phylomesh
