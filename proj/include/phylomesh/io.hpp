#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "phylomesh/island.hpp"
#include "phylomesh/mesh.hpp"
#include "phylomesh/metrics.hpp"
#include "phylomesh/phylogeny.hpp"
#include "phylomesh/surface.hpp"

namespace phylomesh {

// One row of the genome export. The annotation field is the packed surface
// byte layout (sites then 32-bit depth), hex encoded.
struct GenomeRow {
  uint16_t pe_x = 0;
  uint16_t pe_y = 0;
  uint32_t slot = 0;
  float fitness = 0.0f;
  uint64_t depth = 0;
  std::string annotation_hex;
  uint64_t lineage_id = 0;
};

std::string hex_encode(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> hex_decode(const std::string& hex);  // throws DataError

// Shortest decimal representation that round-trips the float exactly.
std::string format_float(float value);
float parse_float(const std::string& text);  // throws DataError

void write_genomes_csv(const std::filesystem::path& path,
                       const std::vector<GenomeRow>& rows);
std::vector<GenomeRow> read_genomes_csv(const std::filesystem::path& path);

void write_pedigree_csv(const std::filesystem::path& path,
                        const std::vector<PedigreeRecord>& records);
std::vector<PedigreeRecord> read_pedigree_csv(const std::filesystem::path& path);

void write_phylogeny_csv(const std::filesystem::path& path, const PhylogenyTable& table);
PhylogenyTable read_phylogeny_csv(const std::filesystem::path& path);

GenomeRow to_genome_row(const SampledGenome& sampled);
SurfaceAnnotation decode_annotation(const SurfaceConfig& config, const GenomeRow& row);

// Reconstruction taxon labels; the trailing field is the lineage id.
std::string taxon_label(const GenomeRow& row);

// FNV-1a over the file bytes, as "fnv1a64:<16 hex digits>".
std::string file_digest(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);  // throws DataError
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace phylomesh
