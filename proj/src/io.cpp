#include "phylomesh/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "phylomesh/errors.hpp"

namespace phylomesh {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  for (;;) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Lines of a CSV file after verifying the exact header.
std::vector<std::string> read_csv_lines(const std::filesystem::path& path,
                                        const std::string& expected_header) {
  const std::string contents = read_file(path);
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string::npos) end = contents.size();
    if (end > start) lines.push_back(contents.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty() || lines.front() != expected_header) {
    throw DataError(path.string() + ": expected header '" + expected_header + "'");
  }
  lines.erase(lines.begin());
  return lines;
}

template <typename T>
T parse_unsigned(const std::string& field, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw DataError(std::string("bad ") + what + " field '" + field + "'");
  }
  return value;
}

int64_t parse_signed64(const std::string& field, const char* what) {
  int64_t value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw DataError(std::string("bad ") + what + " field '" + field + "'");
  }
  return value;
}

void expect_fields(const std::vector<std::string>& fields, size_t count,
                   const char* what) {
  if (fields.size() != count) {
    throw DataError(std::string(what) + ": expected " + std::to_string(count) +
                    " fields, got " + std::to_string(fields.size()));
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << contents;
  if (!out) throw DataError("write failed for " + path.string());
}

std::string hex_encode(const std::vector<uint8_t>& bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const uint8_t byte : bytes) {
    out.push_back(kHexDigits[byte >> 4]);
    out.push_back(kHexDigits[byte & 0xF]);
  }
  return out;
}

std::vector<uint8_t> hex_decode(const std::string& hex) {
  if (hex.size() % 2 != 0) throw DataError("hex string has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<uint8_t> bytes;
  bytes.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw DataError("bad hex digit in '" + hex + "'");
    bytes.push_back(static_cast<uint8_t>(hi << 4 | lo));
  }
  return bytes;
}

std::string format_float(float value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::logic_error("float formatting failed");
  return std::string(buffer, ptr);
}

float parse_float(const std::string& text) {
  float value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw DataError("bad float field '" + text + "'");
  }
  return value;
}

namespace {
constexpr const char* kGenomeHeader = "pe_x,pe_y,slot,fitness,depth,annotation_hex,lineage_id";
constexpr const char* kPedigreeHeader = "child_id,parent_id,birth_generation,pe_x,pe_y";
constexpr const char* kPhylogenyHeader = "id,ancestor_list,origin_time,taxon_label";
}  // namespace

void write_genomes_csv(const std::filesystem::path& path,
                       const std::vector<GenomeRow>& rows) {
  std::string out(kGenomeHeader);
  out.push_back('\n');
  for (const GenomeRow& row : rows) {
    out += std::to_string(row.pe_x);
    out.push_back(',');
    out += std::to_string(row.pe_y);
    out.push_back(',');
    out += std::to_string(row.slot);
    out.push_back(',');
    out += format_float(row.fitness);
    out.push_back(',');
    out += std::to_string(row.depth);
    out.push_back(',');
    out += row.annotation_hex;
    out.push_back(',');
    out += std::to_string(row.lineage_id);
    out.push_back('\n');
  }
  write_file(path, out);
}

std::vector<GenomeRow> read_genomes_csv(const std::filesystem::path& path) {
  std::vector<GenomeRow> rows;
  for (const std::string& line : read_csv_lines(path, kGenomeHeader)) {
    const auto fields = split_fields(line);
    expect_fields(fields, 7, "genomes.csv");
    GenomeRow row;
    row.pe_x = parse_unsigned<uint16_t>(fields[0], "pe_x");
    row.pe_y = parse_unsigned<uint16_t>(fields[1], "pe_y");
    row.slot = parse_unsigned<uint32_t>(fields[2], "slot");
    row.fitness = parse_float(fields[3]);
    row.depth = parse_unsigned<uint64_t>(fields[4], "depth");
    row.annotation_hex = fields[5];
    row.lineage_id = parse_unsigned<uint64_t>(fields[6], "lineage_id");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_pedigree_csv(const std::filesystem::path& path,
                        const std::vector<PedigreeRecord>& records) {
  std::string out(kPedigreeHeader);
  out.push_back('\n');
  for (const PedigreeRecord& record : records) {
    out += std::to_string(record.child_id);
    out.push_back(',');
    out += std::to_string(record.parent_id);
    out.push_back(',');
    out += std::to_string(record.birth_generation);
    out.push_back(',');
    out += std::to_string(record.pe_x);
    out.push_back(',');
    out += std::to_string(record.pe_y);
    out.push_back('\n');
  }
  write_file(path, out);
}

std::vector<PedigreeRecord> read_pedigree_csv(const std::filesystem::path& path) {
  std::vector<PedigreeRecord> records;
  for (const std::string& line : read_csv_lines(path, kPedigreeHeader)) {
    const auto fields = split_fields(line);
    expect_fields(fields, 5, "pedigree.csv");
    PedigreeRecord record;
    record.child_id = parse_unsigned<uint64_t>(fields[0], "child_id");
    record.parent_id = parse_unsigned<uint64_t>(fields[1], "parent_id");
    record.birth_generation = parse_unsigned<uint64_t>(fields[2], "birth_generation");
    record.pe_x = parse_unsigned<uint16_t>(fields[3], "pe_x");
    record.pe_y = parse_unsigned<uint16_t>(fields[4], "pe_y");
    records.push_back(record);
  }
  return records;
}

void write_phylogeny_csv(const std::filesystem::path& path, const PhylogenyTable& table) {
  std::string out(kPhylogenyHeader);
  out.push_back('\n');
  for (const PhylogenyRow& row : table.rows) {
    out += std::to_string(row.id);
    out.push_back(',');
    if (row.ancestor_id == kNoAncestor) {
      out += "[none]";
    } else {
      out.push_back('[');
      out += std::to_string(row.ancestor_id);
      out.push_back(']');
    }
    out.push_back(',');
    out += std::to_string(row.origin_time);
    out.push_back(',');
    out += row.taxon_label;
    out.push_back('\n');
  }
  write_file(path, out);
}

PhylogenyTable read_phylogeny_csv(const std::filesystem::path& path) {
  PhylogenyTable table;
  for (const std::string& line : read_csv_lines(path, kPhylogenyHeader)) {
    const auto fields = split_fields(line);
    expect_fields(fields, 4, "phylogeny.csv");
    PhylogenyRow row;
    row.id = parse_unsigned<uint32_t>(fields[0], "id");
    const std::string& ancestors = fields[1];
    if (ancestors.size() < 2 || ancestors.front() != '[' || ancestors.back() != ']') {
      throw DataError("bad ancestor_list field '" + ancestors + "'");
    }
    const std::string inner = ancestors.substr(1, ancestors.size() - 2);
    row.ancestor_id =
        inner == "none" ? kNoAncestor : parse_signed64(inner, "ancestor_list");
    row.origin_time = parse_signed64(fields[2], "origin_time");
    row.taxon_label = fields[3];
    table.rows.push_back(std::move(row));
  }
  return table;
}

GenomeRow to_genome_row(const SampledGenome& sampled) {
  GenomeRow row;
  row.pe_x = sampled.x;
  row.pe_y = sampled.y;
  row.slot = sampled.slot;
  row.fitness = sampled.genome.fitness;
  row.depth = sampled.genome.depth();
  row.annotation_hex = hex_encode(sampled.genome.annotation.to_bytes());
  row.lineage_id = sampled.genome.lineage_id;
  return row;
}

SurfaceAnnotation decode_annotation(const SurfaceConfig& config, const GenomeRow& row) {
  SurfaceAnnotation annotation =
      SurfaceAnnotation::from_bytes(config, hex_decode(row.annotation_hex));
  if (annotation.depth() != row.depth) {
    throw DataError("annotation depth " + std::to_string(annotation.depth()) +
                    " disagrees with depth column " + std::to_string(row.depth));
  }
  return annotation;
}

std::string taxon_label(const GenomeRow& row) {
  return std::to_string(row.pe_x) + "_" + std::to_string(row.pe_y) + "_" +
         std::to_string(row.slot) + "_" + std::to_string(row.lineage_id);
}

std::string file_digest(const std::filesystem::path& path) {
  const std::string contents = read_file(path);
  uint64_t hash = 0xcbf29ce484222325ull;
  for (const char c : contents) {
    hash ^= static_cast<uint8_t>(c);
    hash *= 0x100000001b3ull;
  }
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[i] = kHexDigits[hash & 0xF];
    hash >>= 4;
  }
  return "fnv1a64:" + hex;
}

}  // namespace phylomesh
