#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phylomesh/rng.hpp"
#include "phylomesh/surface.hpp"

namespace phylomesh {

// Unit of selection and migration. Fitness is a 32-bit float to match the
// compact genome layout this simulator models; depth lives inside the
// annotation so the two can never disagree.
struct Genome {
  float fitness = 0.0f;
  uint64_t lineage_id = 0;
  SurfaceAnnotation annotation;

  uint64_t depth() const { return annotation.depth(); }
  bool operator==(const Genome&) const = default;
};

// Stored-scalar fitness criterion. Swapping the fitness model means
// replacing this, mutate(), and the founding initializer.
inline float evaluate(const Genome& genome) { return genome.fitness; }

struct TreatmentConfig {
  double p_deleterious = 0.33;
  double p_beneficial = 0.0;  // 0.003 when adaptation is enabled
  double sigma_deleterious = 0.1;
  double sigma_beneficial = 1.0;

  void validate() const;  // throws ConfigError
};

struct PeConfig {
  uint32_t pop_size = 32;
  uint32_t tournament_k = 5;

  void validate() const;  // throws ConfigError
};

// One replication event in the exact ground-truth birth log.
struct PedigreeRecord {
  uint64_t child_id = 0;
  uint64_t parent_id = 0;  // equals child_id for founders
  uint64_t birth_generation = 0;
  uint16_t pe_x = 0;
  uint16_t pe_y = 0;
};

// Lineage ids pack the birthplace coordinate with a per-PE serial so that
// id allocation never needs cross-PE coordination.
inline uint64_t make_lineage_id(uint16_t pe_x, uint16_t pe_y, uint64_t serial) {
  return (static_cast<uint64_t>(pe_x) << 52) | (static_cast<uint64_t>(pe_y) << 40) | serial;
}

// One island: a population plus its private random streams. Operations on
// distinct PeStates may run concurrently; nothing here is shared.
struct PeState {
  uint16_t x = 0;
  uint16_t y = 0;
  std::vector<Genome> population;
  uint64_t generation = 0;
  RngStream rng;       // selection, mutation, differentiae, migration draws
  RngStream gate_rng;  // scheduler step gating only

  std::vector<PedigreeRecord> pedigree;  // populated when tracking is enabled
  uint64_t next_serial = 0;

  // reused scratch, not part of logical state
  std::vector<uint32_t> scratch_slots;
  std::vector<Genome> next_population;
};

// Applies the two-regime Gaussian fitness mutation in place. One uniform
// draw splits the outcome: below p_deleterious the fitness drops by
// |N(0, sigma_deleterious)|, in the next p_beneficial-wide band it rises by
// |N(0, sigma_beneficial)|, otherwise it is untouched. Annotation and depth
// are not modified here.
void mutate(Genome& genome, const TreatmentConfig& treatment, RngStream& rng);

// Samples k members without replacement and returns the index of a
// maximal-fitness member, ties broken uniformly at random.
size_t tournament_select(std::span<const Genome> population, uint32_t k,
                         RngStream& rng, std::vector<uint32_t>& scratch);

// Founds the population: all fitness 0, depth 0, blank annotations,
// distinct lineage ids. Records founder pedigree rows when tracking.
void found_population(PeState& pe, const PeConfig& config,
                      const SurfaceConfig& surface, bool exact_tracking);

// Produces the next generation: per slot, tournament_select then mutate,
// then one deposit of a fresh uniformly random differentia. Increments the
// PE generation counter. Appends one PedigreeRecord per child when
// tracking is enabled.
void advance_generation(PeState& pe, const TreatmentConfig& treatment,
                        const PeConfig& config, bool exact_tracking);

}  // namespace phylomesh
