#include "phylomesh/island.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "phylomesh/errors.hpp"

namespace phylomesh {

void TreatmentConfig::validate() const {
  if (p_deleterious < 0.0 || p_deleterious > 1.0 ||
      p_beneficial < 0.0 || p_beneficial > 1.0) {
    throw ConfigError("treatment probabilities must lie in [0, 1]");
  }
  if (p_deleterious + p_beneficial > 1.0) {
    throw ConfigError("treatment.p_deleterious + p_beneficial must not exceed 1");
  }
  if (sigma_deleterious <= 0.0 || sigma_beneficial <= 0.0) {
    throw ConfigError("treatment sigmas must be positive");
  }
}

void PeConfig::validate() const {
  if (pop_size == 0) throw ConfigError("pe.pop_size must be positive");
  if (tournament_k == 0 || tournament_k > pop_size) {
    throw ConfigError("pe.tournament_k must lie in [1, pop_size]");
  }
}

void mutate(Genome& genome, const TreatmentConfig& treatment, RngStream& rng) {
  const double u = rng.uniform01();
  if (u < treatment.p_deleterious) {
    genome.fitness -= static_cast<float>(std::fabs(rng.normal(treatment.sigma_deleterious)));
  } else if (u < treatment.p_deleterious + treatment.p_beneficial) {
    genome.fitness += static_cast<float>(std::fabs(rng.normal(treatment.sigma_beneficial)));
  }
}

size_t tournament_select(std::span<const Genome> population, uint32_t k,
                         RngStream& rng, std::vector<uint32_t>& scratch) {
  if (population.empty()) throw std::logic_error("tournament_select on empty population");
  if (k == 0 || k > population.size()) {
    throw std::invalid_argument("tournament size " + std::to_string(k) +
                                " out of range for population of " +
                                std::to_string(population.size()));
  }

  scratch.resize(population.size());
  std::iota(scratch.begin(), scratch.end(), 0u);
  // Partial Fisher-Yates: the first k entries become the sample.
  for (uint32_t i = 0; i < k; ++i) {
    const auto j = i + rng.uniform_below(scratch.size() - i);
    std::swap(scratch[i], scratch[j]);
  }

  size_t best = scratch[0];
  float best_fitness = evaluate(population[best]);
  uint64_t ties = 1;
  for (uint32_t i = 1; i < k; ++i) {
    const size_t candidate = scratch[i];
    const float fitness = evaluate(population[candidate]);
    if (fitness > best_fitness) {
      best = candidate;
      best_fitness = fitness;
      ties = 1;
    } else if (fitness == best_fitness) {
      // Reservoir-style uniform choice among ties.
      ++ties;
      if (rng.uniform_below(ties) == 0) best = candidate;
    }
  }
  return best;
}

void found_population(PeState& pe, const PeConfig& config,
                      const SurfaceConfig& surface, bool exact_tracking) {
  config.validate();
  surface.validate();
  pe.population.clear();
  pe.population.reserve(config.pop_size);
  for (uint32_t slot = 0; slot < config.pop_size; ++slot) {
    Genome genome;
    genome.annotation = SurfaceAnnotation(surface);
    genome.lineage_id = make_lineage_id(pe.x, pe.y, slot);
    pe.population.push_back(std::move(genome));
    if (exact_tracking) {
      const uint64_t id = pe.population.back().lineage_id;
      pe.pedigree.push_back({id, id, 0, pe.x, pe.y});
    }
  }
  pe.next_serial = config.pop_size;
  pe.generation = 0;
}

void advance_generation(PeState& pe, const TreatmentConfig& treatment,
                        const PeConfig& config, bool exact_tracking) {
  if (pe.population.size() != config.pop_size) {
    throw std::logic_error("advance_generation requires a full population");
  }
  const unsigned width = pe.population.front().annotation.config().differentia_width;

  auto& next = pe.next_population;
  next.clear();
  next.reserve(config.pop_size);
  for (uint32_t slot = 0; slot < config.pop_size; ++slot) {
    const size_t parent =
        tournament_select(pe.population, config.tournament_k, pe.rng, pe.scratch_slots);
    next.push_back(pe.population[parent]);
    Genome& child = next.back();
    mutate(child, treatment, pe.rng);
    child.annotation.deposit(pe.rng.bits(width));
    if (exact_tracking) {
      const uint64_t parent_id = child.lineage_id;
      child.lineage_id = make_lineage_id(pe.x, pe.y, pe.next_serial++);
      pe.pedigree.push_back({child.lineage_id, parent_id, child.depth(), pe.x, pe.y});
    }
  }
  pe.population.swap(next);
  ++pe.generation;
}

}  // namespace phylomesh
