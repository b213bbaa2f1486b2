#include "phylomesh/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <string>

#include "phylomesh/errors.hpp"

namespace phylomesh {

void MeshConfig::validate(uint32_t pop_size) const {
  if (width == 0 || height == 0) {
    throw ConfigError("mesh dimensions must be positive, got " + std::to_string(width) +
                      "x" + std::to_string(height));
  }
  if (width > 4096 || height > 4096) {
    throw ConfigError("mesh dimensions above 4096 are not supported");
  }
  if (latency_min < 1 || latency_min > latency_max) {
    throw ConfigError("mesh latencies must satisfy 1 <= latency_min <= latency_max");
  }
  if (!(step_probability > 0.0) || step_probability > 1.0) {
    throw ConfigError("mesh.step_probability must lie in (0, 1]");
  }
  if (halt_generations == 0) throw ConfigError("mesh.halt_generations must be positive");
  if (mig_buffer_size > pop_size) {
    throw ConfigError("mesh.mig_buffer_size must not exceed pe.pop_size");
  }
  if (torus && (width < 2 || height < 2)) {
    throw ConfigError("torus topology requires both mesh dimensions >= 2");
  }
}

bool SimState::all_halted() const {
  for (const PeState& pe : pes) {
    if (!pe_halted(pe)) return false;
  }
  return true;
}

uint64_t SimState::total_generations() const {
  uint64_t total = 0;
  for (const PeState& pe : pes) total += pe.generation;
  return total;
}

namespace {

// Samples mig_buffer_size distinct residents into the emigration buffer and
// dispatches it with a fresh latency draw. Distinct within one buffer;
// successive refills may re-send the same genome.
void refill_and_dispatch(SimState& sim, LinkState& link, PeState& sender) {
  const uint32_t count = sim.mesh.mig_buffer_size;
  auto& slots = sender.scratch_slots;
  slots.resize(sender.population.size());
  std::iota(slots.begin(), slots.end(), 0u);
  for (uint32_t i = 0; i < count; ++i) {
    const auto j = i + sender.rng.uniform_below(slots.size() - i);
    std::swap(slots[i], slots[j]);
  }
  link.emigration.clear();
  for (uint32_t i = 0; i < count; ++i) link.emigration.push_back(sender.population[slots[i]]);

  const uint64_t spread = sim.mesh.latency_max - sim.mesh.latency_min + 1;
  link.delivery_round = sim.round + sim.mesh.latency_min + sender.rng.uniform_below(spread);
  link.in_flight = true;
  link.send_complete = false;
}

void update_pe(SimState& sim, uint32_t pe_index) {
  PeState& pe = sim.pes[pe_index];
  if (sim.pe_halted(pe)) return;
  if (pe.gate_rng.uniform01() >= sim.mesh.step_probability) return;
  poll_and_exchange(sim, pe_index);
  advance_generation(pe, sim.treatment, sim.pe_config, sim.exact_tracking);
}

// Promote flag raises from last round, then deliver due batches in fixed
// row-major link order. Shared serial prologue for both schedulers.
void round_prologue(SimState& sim) {
  for (LinkState& link : sim.links) {
    if (link.send_complete_pending) {
      link.send_complete = true;
      link.send_complete_pending = false;
    }
  }
  for (LinkState& link : sim.links) {
    if (link.in_flight && link.delivery_round <= sim.round) {
      assert(!link.recv_complete);
      link.immigration = std::move(link.emigration);
      link.emigration.clear();
      link.in_flight = false;
      link.recv_complete = true;
    }
  }
}

}  // namespace

SimState init_sim(const MeshConfig& mesh, const PeConfig& pe,
                  const TreatmentConfig& treatment, const SurfaceConfig& surface,
                  uint64_t seed, bool exact_tracking) {
  pe.validate();
  treatment.validate();
  surface.validate();
  mesh.validate(pe.pop_size);

  SimState sim;
  sim.mesh = mesh;
  sim.pe_config = pe;
  sim.treatment = treatment;
  sim.surface = surface;
  sim.seed = seed;
  sim.exact_tracking = exact_tracking;
  sim.scheduler_rng = RngStream::for_stream(seed, kStreamScheduler);

  const size_t pe_count = static_cast<size_t>(mesh.width) * mesh.height;
  sim.pes.resize(pe_count);
  sim.out_links.assign(pe_count, {kNoLink, kNoLink, kNoLink, kNoLink});
  sim.in_links.assign(pe_count, {kNoLink, kNoLink, kNoLink, kNoLink});

  for (uint32_t y = 0; y < mesh.height; ++y) {
    for (uint32_t x = 0; x < mesh.width; ++x) {
      PeState& state = sim.pes[sim.pe_index(x, y)];
      state.x = static_cast<uint16_t>(x);
      state.y = static_cast<uint16_t>(y);
      state.rng = RngStream::for_stream(seed, kStreamPe, x, y);
      state.gate_rng = RngStream::for_stream(seed, kStreamGate, x, y);
      found_population(state, pe, surface, exact_tracking);
    }
  }

  // Directed links in row-major source order, directions E, S, N, W. The
  // incoming slot at the destination is the opposite direction.
  constexpr int dx[4] = {1, 0, 0, -1};
  constexpr int dy[4] = {0, 1, -1, 0};
  constexpr Direction opposite[4] = {kWest, kNorth, kSouth, kEast};
  for (uint32_t y = 0; y < mesh.height; ++y) {
    for (uint32_t x = 0; x < mesh.width; ++x) {
      for (int dir = 0; dir < 4; ++dir) {
        int64_t nx = static_cast<int64_t>(x) + dx[dir];
        int64_t ny = static_cast<int64_t>(y) + dy[dir];
        if (mesh.torus) {
          nx = (nx + mesh.width) % mesh.width;
          ny = (ny + mesh.height) % mesh.height;
        } else if (nx < 0 || ny < 0 || nx >= mesh.width || ny >= mesh.height) {
          continue;
        }
        LinkState link;
        link.src = static_cast<uint32_t>(sim.pe_index(x, y));
        link.dst = static_cast<uint32_t>(sim.pe_index(static_cast<uint32_t>(nx),
                                                      static_cast<uint32_t>(ny)));
        const int link_index = static_cast<int>(sim.links.size());
        sim.out_links[link.src][dir] = link_index;
        sim.in_links[link.dst][opposite[dir]] = link_index;
        sim.links.push_back(std::move(link));
      }
    }
  }

  // Open all receives and dispatch the founding emigration batches.
  if (mesh.mig_buffer_size > 0) {
    for (size_t p = 0; p < pe_count; ++p) {
      for (int dir = 0; dir < 4; ++dir) {
        const int li = sim.out_links[p][dir];
        if (li == kNoLink) continue;
        refill_and_dispatch(sim, sim.links[li], sim.pes[p]);
      }
    }
  }
  return sim;
}

void poll_and_exchange(SimState& sim, uint32_t pe_index) {
  if (sim.mesh.mig_buffer_size == 0) return;
  PeState& pe = sim.pes[pe_index];

  for (int dir = 0; dir < 4; ++dir) {
    const int li = sim.in_links[pe_index][dir];
    if (li == kNoLink) continue;
    LinkState& link = sim.links[li];
    if (!link.recv_complete) continue;
    for (Genome& immigrant : link.immigration) {
      const auto slot = pe.rng.uniform_below(pe.population.size());
      pe.population[slot] = std::move(immigrant);
    }
    link.immigration.clear();
    link.recv_complete = false;
    link.send_complete_pending = true;  // acceptance callback to the sender
  }

  for (int dir = 0; dir < 4; ++dir) {
    const int li = sim.out_links[pe_index][dir];
    if (li == kNoLink) continue;
    LinkState& link = sim.links[li];
    if (!link.send_complete) continue;
    refill_and_dispatch(sim, link, pe);
  }
}

void step_round(SimState& sim) {
  round_prologue(sim);

  auto& order = sim.visit_order;
  order.resize(sim.pes.size());
  std::iota(order.begin(), order.end(), 0u);
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    const auto j = i + sim.scheduler_rng.uniform_below(order.size() - i);
    std::swap(order[i], order[j]);
  }
  for (const uint32_t p : order) update_pe(sim, p);

  ++sim.round;
}

void step_round_parallel(SimState& sim) {
  round_prologue(sim);

  // Visit order is immaterial: update_pe touches only the PE's own state,
  // its own streams, and link fields no other PE reads this round.
  const auto count = static_cast<int64_t>(sim.pes.size());
#pragma omp parallel for schedule(static)
  for (int64_t p = 0; p < count; ++p) {
    update_pe(sim, static_cast<uint32_t>(p));
  }

  ++sim.round;
}

RunStats run(SimState& sim, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  const uint64_t start_round = sim.round;
  const uint64_t start_generations = sim.total_generations();

  while (!sim.all_halted()) {
    if (parallel) {
      step_round_parallel(sim);
    } else {
      step_round(sim);
    }
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  RunStats stats;
  stats.rounds = sim.round - start_round;
  stats.wall_seconds = elapsed.count();
  stats.pe_generations = sim.total_generations() - start_generations;
  stats.replications = stats.pe_generations * sim.pe_config.pop_size;
  stats.pe_generations_per_sec =
      stats.wall_seconds > 0.0 ? static_cast<double>(stats.pe_generations) / stats.wall_seconds
                               : 0.0;
  return stats;
}

std::vector<SampledGenome> sample_genomes(const SimState& sim, uint32_t per_pe,
                                          RngStream& rng) {
  if (per_pe > sim.pe_config.pop_size) {
    throw std::invalid_argument("sample_genomes: per_pe exceeds pop_size");
  }
  std::vector<SampledGenome> out;
  out.reserve(sim.pes.size() * per_pe);
  std::vector<uint32_t> slots;
  for (const PeState& pe : sim.pes) {
    slots.resize(pe.population.size());
    std::iota(slots.begin(), slots.end(), 0u);
    for (uint32_t i = 0; i < per_pe; ++i) {
      const auto j = i + rng.uniform_below(slots.size() - i);
      std::swap(slots[i], slots[j]);
    }
    std::sort(slots.begin(), slots.begin() + per_pe);
    for (uint32_t i = 0; i < per_pe; ++i) {
      out.push_back({pe.x, pe.y, slots[i], pe.population[slots[i]]});
    }
  }
  return out;
}

std::vector<PedigreeRecord> collect_pedigree(const SimState& sim) {
  std::vector<PedigreeRecord> records;
  size_t total = 0;
  for (const PeState& pe : sim.pes) total += pe.pedigree.size();
  records.reserve(total);
  for (const PeState& pe : sim.pes) {
    records.insert(records.end(), pe.pedigree.begin(), pe.pedigree.end());
  }
  return records;
}

}  // namespace phylomesh
