#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "phylomesh/island.hpp"
#include "phylomesh/rng.hpp"

namespace phylomesh {

struct MeshConfig {
  uint32_t width = 1;
  uint32_t height = 1;
  uint32_t mig_buffer_size = 1;  // genomes per directional buffer; 0 disables migration
  uint32_t latency_min = 1;      // scheduler rounds
  uint32_t latency_max = 4;
  double step_probability = 0.9;
  uint64_t halt_generations = 0;
  bool torus = false;

  void validate(uint32_t pop_size) const;  // throws ConfigError
};

// Delivery and per-PE buffer processing both follow this order.
enum Direction : uint8_t { kEast = 0, kSouth = 1, kNorth = 2, kWest = 3 };
inline constexpr int kNoLink = -1;

// One directed channel between neighboring PEs. The lifecycle is a
// three-state token: a dispatched batch sits in flight until its delivery
// round, delivery moves it to the immigration buffer and raises
// recv_complete, and consumption by the receiver raises send_complete for
// the sender (visible from the next round, modeling the completion
// callback), which frees the sender to refill and dispatch again. At most
// one batch is ever in flight, and a link never holds both an undelivered
// batch and a raised completion flag.
struct LinkState {
  uint32_t src = 0;
  uint32_t dst = 0;
  std::vector<Genome> emigration;    // staged payload, in flight once dispatched
  std::vector<Genome> immigration;   // delivered, awaiting consumption
  uint64_t delivery_round = 0;
  bool in_flight = false;
  bool recv_complete = false;
  bool send_complete = false;
  bool send_complete_pending = false;  // promoted at the next round boundary
};

struct SimState {
  MeshConfig mesh;
  PeConfig pe_config;
  TreatmentConfig treatment;
  SurfaceConfig surface;
  uint64_t seed = 0;
  bool exact_tracking = false;

  std::vector<PeState> pes;  // row-major
  std::vector<LinkState> links;
  std::vector<std::array<int, 4>> out_links;  // per PE, by Direction
  std::vector<std::array<int, 4>> in_links;
  uint64_t round = 0;
  RngStream scheduler_rng;

  std::vector<uint32_t> visit_order;  // scratch for the serial scheduler

  size_t pe_index(uint32_t x, uint32_t y) const {
    return static_cast<size_t>(y) * mesh.width + x;
  }
  bool pe_halted(const PeState& pe) const {
    return pe.generation >= mesh.halt_generations;
  }
  bool all_halted() const;
  uint64_t total_generations() const;
};

struct RunStats {
  uint64_t rounds = 0;
  double wall_seconds = 0.0;
  double pe_generations_per_sec = 0.0;
  uint64_t pe_generations = 0;
  uint64_t replications = 0;  // pe_generations * pop_size
};

struct SampledGenome {
  uint16_t x = 0;
  uint16_t y = 0;
  uint32_t slot = 0;
  Genome genome;
};

// Founds every population, fills every emigration buffer with sampled
// residents and dispatches the initial sends, and opens all receives.
SimState init_sim(const MeshConfig& mesh, const PeConfig& pe,
                  const TreatmentConfig& treatment, const SurfaceConfig& surface,
                  uint64_t seed, bool exact_tracking);

// Processes one PE's completion flags: consumes delivered immigrants into
// uniformly chosen population slots, then refills and re-dispatches any
// acknowledged emigration buffers. Uses the PE's own random stream.
void poll_and_exchange(SimState& sim, uint32_t pe_index);

// One scheduler round: promote pending completion flags, deliver due
// batches in fixed link order, then visit PEs in a seeded random
// permutation, each independently gated by step_probability, running
// poll_and_exchange followed by advance_generation unless halted. This is
// the serial reference scheduler.
void step_round(SimState& sim);

// Same round semantics with the PE-update loop parallelized over OpenMP
// threads. Bit-identical to step_round: PEs exchange no intra-round state
// (flag raises are deferred to the round boundary) and all randomness
// comes from per-PE streams, so visit order cannot influence the outcome.
void step_round_parallel(SimState& sim);

// Drives rounds until every PE reaches halt_generations.
RunStats run(SimState& sim, bool parallel = false);

// Uniformly samples per_pe genomes without replacement from each PE.
std::vector<SampledGenome> sample_genomes(const SimState& sim, uint32_t per_pe,
                                          RngStream& rng);

// Concatenates per-PE birth logs in row-major PE order.
std::vector<PedigreeRecord> collect_pedigree(const SimState& sim);

}  // namespace phylomesh
