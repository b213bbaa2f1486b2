#include "phylomesh/surface.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "phylomesh/errors.hpp"

namespace phylomesh {

void SurfaceConfig::validate() const {
  const uint32_t d = differentia_width;
  if (d != 1 && d != 8 && d != 16 && d != 32 && d != 64) {
    throw ConfigError("surface.differentia_width must be one of {1,8,16,32,64}, got " +
                      std::to_string(d));
  }
  if (policy == SurfacePolicy::Steady) {
    if (num_sites < 2 || !std::has_single_bit(num_sites)) {
      throw ConfigError("steady surface requires a power-of-two num_sites >= 2, got " +
                        std::to_string(num_sites));
    }
  } else {
    if (num_sites < 1) throw ConfigError("ring surface requires num_sites >= 1");
  }
}

namespace {

void validate_policy_sites(SurfacePolicy policy, uint32_t num_sites) {
  SurfaceConfig probe;
  probe.policy = policy;
  probe.num_sites = num_sites;
  probe.differentia_width = 1;
  probe.validate();
}

// Epoch of deposition `time` for a steady surface with `num_sites` sites.
// Requires time >= num_sites.
unsigned steady_epoch(uint32_t num_sites, uint64_t time) {
  return static_cast<unsigned>(std::bit_width(time) - std::bit_width(static_cast<uint64_t>(num_sites)) + 1);
}

}  // namespace

std::optional<uint32_t> assign_storage_site(SurfacePolicy policy,
                                            uint32_t num_sites, uint64_t time) {
  validate_policy_sites(policy, num_sites);
  if (policy == SurfacePolicy::Ring) {
    return static_cast<uint32_t>(time % num_sites);
  }
  // Steady. Chase the eviction chain down to epoch 0; each hop lands on the
  // deposition time of the rank being evicted, which is strictly smaller.
  uint64_t t = time;
  bool first = true;
  for (;;) {
    if (t < num_sites) return static_cast<uint32_t>(t);
    const unsigned epoch = steady_epoch(num_sites, t);
    const uint64_t grain = 1ull << epoch;
    if ((t & (grain - 1)) != 0) {
      // Only reachable for the original argument; ranks on the eviction
      // chain are always multiples of their own epoch's grain.
      if (!first) throw std::logic_error("steady eviction chain hit a dropped rank");
      return std::nullopt;
    }
    const uint64_t half = grain >> 1;
    const uint64_t epoch_start = static_cast<uint64_t>(num_sites) << (epoch - 1);
    const uint64_t k = (t - epoch_start) >> epoch;
    t = (2 * k + 1) * half;
    first = false;
  }
}

std::vector<SiteRank> lookup_resident_times(SurfacePolicy policy,
                                            uint32_t num_sites, uint64_t depth) {
  validate_policy_sites(policy, num_sites);
  std::vector<SiteRank> out;
  if (depth == 0) return out;

  if (policy == SurfacePolicy::Ring) {
    const uint64_t start = depth >= num_sites ? depth - num_sites : 0;
    out.reserve(static_cast<size_t>(depth - start));
    for (uint64_t rank = start; rank < depth; ++rank) {
      out.push_back({static_cast<uint32_t>(rank % num_sites), rank});
    }
  } else if (depth <= num_sites) {
    // Dense fill of epoch 0.
    out.reserve(static_cast<size_t>(depth));
    for (uint64_t rank = 0; rank < depth; ++rank) {
      out.push_back({static_cast<uint32_t>(rank), rank});
    }
  } else {
    // Reconstruct the retained rank set. At the start of the current epoch
    // the surface holds every multiple of 2^(e-1) below S*2^(e-1); the
    // stores performed so far have evicted the smallest odd multiples in
    // order and appended multiples of 2^e from the epoch itself.
    const uint64_t last = depth - 1;
    const unsigned epoch = steady_epoch(num_sites, last);
    const uint64_t grain = 1ull << epoch;
    const uint64_t half = grain >> 1;
    const uint64_t epoch_start = static_cast<uint64_t>(num_sites) << (epoch - 1);
    const uint64_t stores = (last - epoch_start) / grain + 1;

    std::vector<uint64_t> retained;
    retained.reserve(num_sites);
    for (uint64_t m = 0; m < num_sites; ++m) {
      if (m % 2 == 0 || (m - 1) / 2 >= stores) retained.push_back(m * half);
    }
    for (uint64_t j = 0; j < stores; ++j) retained.push_back(epoch_start + j * grain);

    out.reserve(retained.size());
    for (uint64_t rank : retained) {
      const auto site = assign_storage_site(policy, num_sites, rank);
      out.push_back({site.value(), rank});
    }
  }

  std::sort(out.begin(), out.end(),
            [](const SiteRank& a, const SiteRank& b) { return a.site < b.site; });
  return out;
}

SurfaceAnnotation::SurfaceAnnotation(const SurfaceConfig& config) : config_(config) {
  config_.validate();
  const size_t total_bits = static_cast<size_t>(config_.num_sites) * config_.differentia_width;
  words_.assign((total_bits + 63) / 64, 0);
}

void SurfaceAnnotation::set_site(uint32_t site, uint64_t value) {
  const uint32_t d = config_.differentia_width;
  const size_t bit = static_cast<size_t>(site) * d;
  // d divides 64, so a site never straddles a word boundary.
  const size_t word = bit / 64;
  const unsigned shift = bit % 64;
  const uint64_t mask = config_.differentia_mask();
  words_[word] = (words_[word] & ~(mask << shift)) | (value << shift);
}

uint64_t SurfaceAnnotation::site_value(uint32_t site) const {
  const uint32_t d = config_.differentia_width;
  const size_t bit = static_cast<size_t>(site) * d;
  return (words_[bit / 64] >> (bit % 64)) & config_.differentia_mask();
}

void SurfaceAnnotation::deposit(uint64_t differentia) {
  if (differentia > config_.differentia_mask()) {
    throw std::invalid_argument("differentia does not fit in " +
                                std::to_string(config_.differentia_width) + " bits");
  }
  if (const auto site = assign_storage_site(config_.policy, config_.num_sites, depth_)) {
    set_site(*site, differentia);
  }
  ++depth_;
}

std::vector<Allele> SurfaceAnnotation::extract_alleles() const {
  auto residents = lookup_resident_times(config_.policy, config_.num_sites, depth_);
  std::vector<Allele> alleles;
  alleles.reserve(residents.size());
  for (const SiteRank& sr : residents) alleles.push_back({sr.rank, site_value(sr.site)});
  std::sort(alleles.begin(), alleles.end(),
            [](const Allele& a, const Allele& b) { return a.rank < b.rank; });
  return alleles;
}

std::vector<uint8_t> SurfaceAnnotation::to_bytes() const {
  std::vector<uint8_t> bytes;
  const size_t payload = config_.payload_bytes();
  bytes.reserve(payload + 4);
  for (size_t i = 0; i < payload; ++i) {
    bytes.push_back(static_cast<uint8_t>(words_[i / 8] >> ((i % 8) * 8)));
  }
  const auto depth32 = static_cast<uint32_t>(depth_);
  for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<uint8_t>(depth32 >> (8 * i)));
  return bytes;
}

SurfaceAnnotation SurfaceAnnotation::from_bytes(const SurfaceConfig& config,
                                                const std::vector<uint8_t>& bytes) {
  SurfaceAnnotation annotation(config);
  const size_t payload = config.payload_bytes();
  if (bytes.size() != payload + 4) {
    throw DataError("annotation payload is " + std::to_string(bytes.size()) +
                    " bytes, expected " + std::to_string(payload + 4));
  }
  for (size_t i = 0; i < payload; ++i) {
    annotation.words_[i / 8] |= static_cast<uint64_t>(bytes[i]) << ((i % 8) * 8);
  }
  // Padding bits beyond num_sites * differentia_width must be zero.
  const size_t total_bits = static_cast<size_t>(config.num_sites) * config.differentia_width;
  if (total_bits % 64 != 0 && !annotation.words_.empty()) {
    const uint64_t pad = annotation.words_.back() >> (total_bits % 64);
    if (pad != 0) throw DataError("annotation payload has nonzero padding bits");
  }
  uint32_t depth32 = 0;
  for (int i = 0; i < 4; ++i) depth32 |= static_cast<uint32_t>(bytes[payload + i]) << (8 * i);
  annotation.depth_ = depth32;
  return annotation;
}

}  // namespace phylomesh
