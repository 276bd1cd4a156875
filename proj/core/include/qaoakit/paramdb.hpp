#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qaoakit/angles.hpp"
#include "qaoakit/canonical.hpp"
#include "qaoakit/graph.hpp"
#include "qaoakit/optimize.hpp"

namespace qaoakit {

struct DbEntry {
  Certificate certificate;
  int n = 0;
  int p = 0;
  std::vector<double> gamma;  // pi-units, canonical sector
  std::vector<double> beta;
  int c_max = 0;
  double expectation = 0.0;
  double ratio = 0.0;
  std::optional<std::vector<AngleVector>> degenerate_angles;  // pi-units, box-reduced
  int orbit_count = 0;
  Rational average_degree;
  std::string source;
  int restarts = 0;

  AngleVector angles() const { return make_angles(gamma, beta, AngleUnit::PiUnits); }
  friend bool operator==(const DbEntry&, const DbEntry&) = default;
};

struct FixedAngleEntry {
  int degree = 0;
  int p = 0;
  std::vector<double> gamma;  // pi-units
  std::vector<double> beta;
  std::optional<double> expected_ratio;

  AngleVector angles() const { return make_angles(gamma, beta, AngleUnit::PiUnits); }
  friend bool operator==(const FixedAngleEntry&, const FixedAngleEntry&) = default;
};

struct DbMetadata {
  std::uint64_t seed = 0;
  std::vector<int> p_values;
  std::vector<int> restarts_per_p;
  bool degenerates = false;
  std::string tool_version;
  std::string build_config;

  friend bool operator==(const DbMetadata&, const DbMetadata&) = default;
};

/// Compiled parameter database. Entries are kept sorted by (certificate, p)
/// for binary-search lookup; fixed angles sorted by (degree, p). Immutable
/// once built and safe to share across threads.
class Database {
 public:
  Database() = default;
  Database(std::vector<DbEntry> entries, std::vector<FixedAngleEntry> fixed_angles,
           DbMetadata metadata);

  const std::vector<DbEntry>& entries() const { return entries_; }
  const std::vector<FixedAngleEntry>& fixed_angles() const { return fixed_; }
  const DbMetadata& metadata() const { return meta_; }

  const DbEntry* find(const Certificate& cert, int p) const;
  const FixedAngleEntry* nearest_fixed(const Rational& average_degree, int p) const;

  friend bool operator==(const Database&, const Database&) = default;

 private:
  std::vector<DbEntry> entries_;
  std::vector<FixedAngleEntry> fixed_;
  DbMetadata meta_;
};

enum class LookupKind { Exact, FixedAngleFallback, NotFound };

struct LookupResult {
  LookupKind kind = LookupKind::NotFound;
  std::optional<AngleVector> angles;  // pi-units
  const DbEntry* entry = nullptr;
  const FixedAngleEntry* fixed_entry = nullptr;
};

/// Exact hit on (certificate(g), p); otherwise the fixed-angle entry at the
/// requested p whose degree is nearest to the average degree (ties toward
/// the lower degree); otherwise NotFound.
LookupResult lookup(const Database& db, const Graph& g, int p);

/// Coordinate-wise median (pi-units, canonical sector) over the entries at
/// depth p selected by the filter; even counts average the two middle values.
AngleVector median_angles(const Database& db,
                          const std::function<bool(const DbEntry&)>& filter, int p);

struct BuildOptions {
  std::vector<int> p_values = {1};
  OptConfig opt;
  bool enumerate_degenerates = false;
  int grid_per_gamma = 24;
  int grid_per_beta = 12;
  std::string source = "regenerated";
  unsigned threads = 1;
};

/// One entry per (connected graph, p): multistart-optimized angles
/// (normalized to the canonical sector), brute-force c_max, ratio, orbit
/// count, and optionally the full degenerate-optima list. Deterministic
/// given opt.seed; edgeless graphs are skipped with a warning.
Database build_db(const std::vector<Graph>& graphs, const BuildOptions& options,
                  std::vector<std::string>* warnings = nullptr);

// ---- raw ingestion (Fig-1 style compile-at-install pipeline) -------------

struct RawRecord {
  enum class Kind { GraphEntry, FixedAngles };
  Kind kind = Kind::GraphEntry;
  std::string graph6;       // GraphEntry
  int degree = 0;           // FixedAngles
  int p = 0;
  std::vector<double> gamma;
  std::vector<double> beta;
  AngleUnit units = AngleUnit::PiUnits;
  int c_max = 0;
  std::optional<double> expectation;
  std::optional<double> expected_ratio;
  std::string source;
  int restarts = 0;
  std::string origin;  // file:line provenance
};

enum class RawFormat { JsonLines, Csv };

struct IngestReport {
  std::vector<RawRecord> records;
  std::vector<std::string> warnings;  // unknown fields, with line numbers
  std::vector<std::string> errors;    // rejected records, with line numbers
};

IngestReport ingest_raw(const std::string& path, RawFormat format);

struct CompileOptions {
  double validation_tol = 1e-6;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string build_config;
};

struct CompileReport {
  Database db;
  std::vector<std::string> quarantined;  // origin + reason per rejected record
};

/// Augments raw records with certificates, orbit counts, and degree stats;
/// normalizes angles to the canonical sector; validates each graph record by
/// re-simulation (retrying under a gamma sign flip before quarantining it);
/// deduplicates by (certificate, p), keeping the higher expectation.
CompileReport compile_db(const std::vector<RawRecord>& records,
                         const CompileOptions& options = {});

/// Binary format: magic "QKDB", u16 version, little-endian payload,
/// length-prefixed strings, entries sorted by (certificate, p), trailing
/// FNV-1a checksum of all preceding bytes.
void save_db(const Database& db, const std::string& path);
Database load_db(const std::string& path);

/// Environment variable naming the default database path for the CLI.
inline constexpr const char* kDbEnvVar = "QAOAKIT_DB";

}  // namespace qaoakit
