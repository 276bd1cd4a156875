#include "qaoakit/paramdb.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qaoakit/baselines.hpp"
#include "qaoakit/graph6.hpp"
#include "qaoakit/parallel.hpp"
#include "qaoakit/rng.hpp"
#include "qaoakit/symmetry.hpp"
#include "qaoakit/version.hpp"

namespace qaoakit {

namespace {

bool entry_key_less(const DbEntry& a, const DbEntry& b) {
  if (a.certificate.bytes != b.certificate.bytes) return a.certificate.bytes < b.certificate.bytes;
  return a.p < b.p;
}

bool fixed_key_less(const FixedAngleEntry& a, const FixedAngleEntry& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  return a.p < b.p;
}

}  // namespace

Database::Database(std::vector<DbEntry> entries, std::vector<FixedAngleEntry> fixed_angles,
                   DbMetadata metadata)
    : entries_(std::move(entries)), fixed_(std::move(fixed_angles)), meta_(std::move(metadata)) {
  std::sort(entries_.begin(), entries_.end(), entry_key_less);
  std::sort(fixed_.begin(), fixed_.end(), fixed_key_less);
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i - 1].certificate == entries_[i].certificate && entries_[i - 1].p == entries_[i].p)
      throw std::invalid_argument("duplicate database key (certificate, p)");
  for (std::size_t i = 1; i < fixed_.size(); ++i)
    if (fixed_[i - 1].degree == fixed_[i].degree && fixed_[i - 1].p == fixed_[i].p)
      throw std::invalid_argument("duplicate fixed-angle key (degree, p)");
}

const DbEntry* Database::find(const Certificate& cert, int p) const {
  DbEntry probe;
  probe.certificate = cert;
  probe.p = p;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, entry_key_less);
  if (it == entries_.end() || it->certificate != cert || it->p != p) return nullptr;
  return &*it;
}

const FixedAngleEntry* Database::nearest_fixed(const Rational& average_degree, int p) const {
  const FixedAngleEntry* best = nullptr;
  long long best_dist_num = 0;
  for (const auto& f : fixed_) {
    if (f.p != p) continue;
    // |degree - avg| compared exactly as |degree * den - num|
    long long dist = std::llabs(f.degree * average_degree.den - average_degree.num);
    if (best == nullptr || dist < best_dist_num ||
        (dist == best_dist_num && f.degree < best->degree)) {
      best = &f;
      best_dist_num = dist;
    }
  }
  return best;
}

LookupResult lookup(const Database& db, const Graph& g, int p) {
  LookupResult r;
  Certificate cert = canonical_certificate(g);
  if (const DbEntry* e = db.find(cert, p)) {
    r.kind = LookupKind::Exact;
    r.entry = e;
    r.angles = e->angles();
    return r;
  }
  if (const FixedAngleEntry* f = db.nearest_fixed(degree_stats(g).average_degree, p)) {
    r.kind = LookupKind::FixedAngleFallback;
    r.fixed_entry = f;
    r.angles = f->angles();
    return r;
  }
  return r;
}

AngleVector median_angles(const Database& db,
                          const std::function<bool(const DbEntry&)>& filter, int p) {
  std::vector<const DbEntry*> selected;
  for (const auto& e : db.entries())
    if (e.p == p && filter(e)) selected.push_back(&e);
  if (selected.empty()) throw std::invalid_argument("median_angles: empty selection");

  auto median_of = [&](auto&& get) {
    std::vector<double> vals;
    vals.reserve(selected.size());
    for (const auto* e : selected) vals.push_back(get(*e));
    std::sort(vals.begin(), vals.end());
    std::size_t m = vals.size();
    if (m % 2 == 1) return vals[m / 2];
    return 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
  };

  std::vector<double> gamma(static_cast<std::size_t>(p)), beta(static_cast<std::size_t>(p));
  for (int l = 0; l < p; ++l) {
    gamma[static_cast<std::size_t>(l)] =
        median_of([l](const DbEntry& e) { return e.gamma[static_cast<std::size_t>(l)]; });
    beta[static_cast<std::size_t>(l)] =
        median_of([l](const DbEntry& e) { return e.beta[static_cast<std::size_t>(l)]; });
  }
  return make_angles(std::move(gamma), std::move(beta), AngleUnit::PiUnits);
}

Database build_db(const std::vector<Graph>& graphs, const BuildOptions& options,
                  std::vector<std::string>* warnings) {
  struct Task {
    std::size_t graph_index;
    std::vector<DbEntry> entries;  // one per p, ascending
    bool skipped = false;
  };
  std::vector<Task> tasks(graphs.size());

  std::vector<int> p_values = options.p_values;
  std::sort(p_values.begin(), p_values.end());

  parallel_for(graphs.size(), options.threads, [&](std::size_t gi) {
    Task& task = tasks[gi];
    task.graph_index = gi;
    const Graph& g = graphs[gi];
    if (g.edge_count() == 0) {
      task.skipped = true;
      return;
    }
    Certificate cert = canonical_certificate(g);
    auto stats = degree_stats(g);
    GraphParity parity = graph_parity(stats);
    auto bf = brute_force_maxcut(g);
    int orbits = vertex_orbits(g).orbit_count();

    std::optional<AngleVector> prev_best;  // pi-units
    for (int p : p_values) {
      OptConfig cfg = options.opt;
      std::vector<AngleVector> extra;
      if (prev_best) {
        AngleVector pad = *prev_best;
        pad.gamma.push_back(0.0);
        pad.beta.push_back(0.0);
        pad.p = p;  // valid only when p == prev.p + 1
        if (pad.p == static_cast<int>(pad.gamma.size())) extra.push_back(pad);
      }
      bool pad_internally = extra.empty() && p >= 2;
      OptResult opt = multistart_optimize(g, p, cfg, 1, false, extra, pad_internally);
      prev_best = opt.best_angles;

      DbEntry e;
      e.certificate = cert;
      e.n = g.vertex_count();
      e.p = p;
      AngleVector norm = normalize_to_sector(opt.best_angles, parity);
      e.gamma = norm.gamma;
      e.beta = norm.beta;
      e.c_max = bf.c_max;
      e.expectation = expected_cut(g, convert_units(norm, AngleUnit::Radians));
      e.ratio = e.expectation / e.c_max;
      e.orbit_count = orbits;
      e.average_degree = stats.average_degree;
      e.source = options.source;
      e.restarts = cfg.restarts > 0 ? cfg.restarts : default_restarts(p);
      if (options.enumerate_degenerates) {
        auto optima = enumerate_degenerate_optima(g, p, options.grid_per_gamma,
                                                  options.grid_per_beta);
        std::vector<AngleVector> pi_units;
        pi_units.reserve(optima.size());
        for (const auto& a : optima) pi_units.push_back(convert_units(a, AngleUnit::PiUnits));
        e.degenerate_angles = std::move(pi_units);
      }
      task.entries.push_back(std::move(e));
    }
  });

  std::vector<DbEntry> entries;
  for (const auto& task : tasks) {
    if (task.skipped) {
      if (warnings)
        warnings->push_back("skipped edgeless graph at index " + std::to_string(task.graph_index));
      continue;
    }
    for (const auto& e : task.entries) entries.push_back(e);
  }

  DbMetadata meta;
  meta.seed = options.opt.seed;
  meta.p_values = p_values;
  for (int p : p_values)
    meta.restarts_per_p.push_back(options.opt.restarts > 0 ? options.opt.restarts
                                                           : default_restarts(p));
  meta.degenerates = options.enumerate_degenerates;
  meta.tool_version = kVersion;
  meta.build_config = options.source;
  return Database(std::move(entries), {}, std::move(meta));
}

// ---- ingestion ------------------------------------------------------------

namespace {

using nlohmann::json;

std::optional<AngleUnit> parse_units(const std::string& s) {
  if (s == "pi") return AngleUnit::PiUnits;
  if (s == "rad") return AngleUnit::Radians;
  return std::nullopt;
}

std::vector<double> parse_semicolon_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

void ingest_json_line(const std::string& line, const std::string& origin, IngestReport& report) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    report.errors.push_back(origin + ": not a JSON object");
    return;
  }
  static const std::vector<std::string> known = {
      "graph6", "degree", "p",           "gamma",   "beta",
      "units",  "c_max",  "expectation", "source",  "restarts",
      "expected_ratio"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      report.warnings.push_back(origin + ": unknown field '" + key + "'");
  }

  RawRecord r;
  r.origin = origin;
  bool is_fixed = j.contains("degree");
  r.kind = is_fixed ? RawRecord::Kind::FixedAngles : RawRecord::Kind::GraphEntry;
  try {
    if (is_fixed) {
      r.degree = j.at("degree").get<int>();
    } else {
      if (!j.contains("graph6")) {
        report.errors.push_back(origin + ": missing required field 'graph6'");
        return;
      }
      r.graph6 = j.at("graph6").get<std::string>();
    }
    for (const char* field : {"p", "gamma", "beta"}) {
      if (!j.contains(field)) {
        report.errors.push_back(origin + ": missing required field '" + std::string(field) + "'");
        return;
      }
    }
    r.p = j.at("p").get<int>();
    r.gamma = j.at("gamma").get<std::vector<double>>();
    r.beta = j.at("beta").get<std::vector<double>>();
    if (j.contains("units")) {
      auto u = parse_units(j.at("units").get<std::string>());
      if (!u) {
        report.errors.push_back(origin + ": units must be 'pi' or 'rad'");
        return;
      }
      r.units = *u;
    }
    if (!is_fixed) {
      for (const char* field : {"c_max", "expectation"}) {
        if (!j.contains(field)) {
          report.errors.push_back(origin + ": missing required field '" + std::string(field) + "'");
          return;
        }
      }
      r.c_max = j.at("c_max").get<int>();
      r.expectation = j.at("expectation").get<double>();
    }
    if (j.contains("expected_ratio")) r.expected_ratio = j.at("expected_ratio").get<double>();
    if (j.contains("source")) r.source = j.at("source").get<std::string>();
    if (j.contains("restarts")) r.restarts = j.at("restarts").get<int>();
  } catch (const json::exception& e) {
    report.errors.push_back(origin + ": " + e.what());
    return;
  }
  if (static_cast<int>(r.gamma.size()) != r.p || static_cast<int>(r.beta.size()) != r.p) {
    report.errors.push_back(origin + ": angle list length does not match p");
    return;
  }
  report.records.push_back(std::move(r));
}

void ingest_csv(std::istream& in, const std::string& path, IngestReport& report) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      continue;
    }
    std::string origin = path + ":" + std::to_string(lineno);
    if (cells.size() != header.size()) {
      report.errors.push_back(origin + ": column count does not match header");
      continue;
    }
    json j = json::object();
    try {
      for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& key = header[i];
        const std::string& value = cells[i];
        if (value.empty()) continue;
        if (key == "gamma" || key == "beta")
          j[key] = parse_semicolon_list(value);
        else if (key == "p" || key == "c_max" || key == "restarts" || key == "degree")
          j[key] = std::stoi(value);
        else if (key == "expectation" || key == "expected_ratio")
          j[key] = std::stod(value);
        else
          j[key] = value;
      }
    } catch (const std::exception& e) {
      report.errors.push_back(origin + ": " + e.what());
      continue;
    }
    ingest_json_line(j.dump(), origin, report);
  }
}

}  // namespace

IngestReport ingest_raw(const std::string& path, RawFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  IngestReport report;
  if (format == RawFormat::Csv) {
    ingest_csv(in, path, report);
    return report;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    ingest_json_line(line, path + ":" + std::to_string(lineno), report);
  }
  return report;
}

CompileReport compile_db(const std::vector<RawRecord>& records, const CompileOptions& options) {
  struct Compiled {
    std::optional<DbEntry> entry;
    std::optional<FixedAngleEntry> fixed;
    std::optional<std::string> quarantine;
  };
  std::vector<Compiled> compiled(records.size());

  parallel_for(records.size(), options.threads, [&](std::size_t i) {
    const RawRecord& r = records[i];
    Compiled& c = compiled[i];
    if (static_cast<int>(r.gamma.size()) != r.p || static_cast<int>(r.beta.size()) != r.p) {
      c.quarantine = r.origin + ": angle list length does not match p";
      return;
    }
    if (r.kind == RawRecord::Kind::FixedAngles) {
      FixedAngleEntry f;
      f.degree = r.degree;
      f.p = r.p;
      AngleVector a = convert_units(make_angles(r.gamma, r.beta, r.units), AngleUnit::PiUnits);
      f.gamma = a.gamma;
      f.beta = a.beta;
      f.expected_ratio = r.expected_ratio;
      c.fixed = std::move(f);
      return;
    }
    Graph g;
    try {
      g = parse_graph6(r.graph6);
    } catch (const std::exception& e) {
      c.quarantine = r.origin + ": bad graph6: " + e.what();
      return;
    }
    if (g.vertex_count() > kMaxSimVertices) {
      c.quarantine = r.origin + ": graph too large to validate by re-simulation";
      return;
    }
    if (g.edge_count() == 0) {
      c.quarantine = r.origin + ": edgeless graph";
      return;
    }
    if (!r.expectation) {
      c.quarantine = r.origin + ": missing expectation";
      return;
    }
    auto bf = brute_force_maxcut(g);
    if (r.c_max != bf.c_max) {
      c.quarantine = r.origin + ": stored c_max " + std::to_string(r.c_max) +
                     " != brute-force optimum " + std::to_string(bf.c_max);
      return;
    }
    if (*r.expectation > bf.c_max + options.validation_tol) {
      c.quarantine = r.origin + ": expectation exceeds c_max";
      return;
    }

    AngleVector rad = convert_units(make_angles(r.gamma, r.beta, r.units), AngleUnit::Radians);
    StatevectorSimulator sim(g);
    double f_direct = sim.expectation(rad);
    AngleVector accepted = rad;
    if (std::abs(f_direct - *r.expectation) > options.validation_tol) {
      // retry under the opposite phase-sign convention
      AngleVector flipped = rad;
      for (auto& gv : flipped.gamma) gv = -gv;
      double f_flipped = sim.expectation(flipped);
      if (std::abs(f_flipped - *r.expectation) > options.validation_tol) {
        std::ostringstream msg;
        msg << r.origin << ": re-simulated expectation " << f_direct << " (gamma-flipped "
            << f_flipped << ") does not match stored " << *r.expectation
            << "; convention mismatch";
        c.quarantine = msg.str();
        return;
      }
      accepted = flipped;
    }

    auto stats = degree_stats(g);
    AngleVector norm = normalize_to_sector(convert_units(accepted, AngleUnit::PiUnits),
                                           graph_parity(stats));
    DbEntry e;
    e.certificate = canonical_certificate(g);
    e.n = g.vertex_count();
    e.p = r.p;
    e.gamma = norm.gamma;
    e.beta = norm.beta;
    e.c_max = bf.c_max;
    e.expectation = sim.expectation(convert_units(norm, AngleUnit::Radians));
    e.ratio = e.expectation / e.c_max;
    e.orbit_count = vertex_orbits(g).orbit_count();
    e.average_degree = stats.average_degree;
    e.source = r.source.empty() ? r.origin : r.source;
    e.restarts = r.restarts;
    c.entry = std::move(e);
  });

  CompileReport report;
  std::vector<DbEntry> entries;
  std::vector<FixedAngleEntry> fixed;
  for (const auto& c : compiled) {
    if (c.quarantine) report.quarantined.push_back(*c.quarantine);
    if (c.entry) {
      // dedup by (certificate, p), keeping the higher expectation
      bool replaced = false;
      for (auto& existing : entries) {
        if (existing.certificate == c.entry->certificate && existing.p == c.entry->p) {
          if (c.entry->expectation > existing.expectation) existing = *c.entry;
          replaced = true;
          break;
        }
      }
      if (!replaced) entries.push_back(*c.entry);
    }
    if (c.fixed) {
      bool duplicate = false;
      for (const auto& existing : fixed)
        if (existing.degree == c.fixed->degree && existing.p == c.fixed->p) duplicate = true;
      if (!duplicate) fixed.push_back(*c.fixed);
    }
  }
  DbMetadata meta;
  meta.seed = options.seed;
  meta.tool_version = kVersion;
  meta.build_config = options.build_config.empty() ? "compiled-from-raw" : options.build_config;
  report.db = Database(std::move(entries), std::move(fixed), std::move(meta));
  return report;
}

// ---- binary format ----------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'Q', 'K', 'D', 'B'};
constexpr std::uint16_t kFormatVersion = 1;

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void str(const std::string& s) {
    if (s.size() > 0xffff) throw std::invalid_argument("string too long for database format");
    u16(static_cast<std::uint16_t>(s.size()));
    buf_.append(s);
  }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(read_le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(read_le(4)); }
  std::uint64_t u64() { return read_le(8); }
  std::int64_t i64() { return static_cast<std::int64_t>(read_le(8)); }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::string str() {
    std::uint16_t len = u16();
    return std::string(take(len));
  }
  bool exhausted() const { return pos_ == data_.size(); }

 private:
  std::string_view take(std::size_t k) {
    if (pos_ + k > data_.size()) throw std::runtime_error("database file truncated");
    std::string_view v = data_.substr(pos_, k);
    pos_ += k;
    return v;
  }
  std::uint64_t read_le(int k) {
    std::string_view v = take(static_cast<std::size_t>(k));
    std::uint64_t out = 0;
    for (int i = k - 1; i >= 0; --i) out = (out << 8) | static_cast<unsigned char>(v[static_cast<std::size_t>(i)]);
    return out;
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_db(const Database& db, const std::string& path) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(kMagic[0]));
  w.u8(static_cast<std::uint8_t>(kMagic[1]));
  w.u8(static_cast<std::uint8_t>(kMagic[2]));
  w.u8(static_cast<std::uint8_t>(kMagic[3]));
  w.u16(kFormatVersion);

  const DbMetadata& m = db.metadata();
  w.u64(m.seed);
  w.u8(m.degenerates ? 1 : 0);
  w.u16(static_cast<std::uint16_t>(m.p_values.size()));
  for (int p : m.p_values) w.u32(static_cast<std::uint32_t>(p));
  w.u16(static_cast<std::uint16_t>(m.restarts_per_p.size()));
  for (int r : m.restarts_per_p) w.u32(static_cast<std::uint32_t>(r));
  w.str(m.tool_version);
  w.str(m.build_config);

  w.u32(static_cast<std::uint32_t>(db.fixed_angles().size()));
  for (const auto& f : db.fixed_angles()) {
    w.u16(static_cast<std::uint16_t>(f.degree));
    w.u16(static_cast<std::uint16_t>(f.p));
    for (int l = 0; l < f.p; ++l) w.f64(f.gamma[static_cast<std::size_t>(l)]);
    for (int l = 0; l < f.p; ++l) w.f64(f.beta[static_cast<std::size_t>(l)]);
    w.u8(f.expected_ratio ? 1 : 0);
    if (f.expected_ratio) w.f64(*f.expected_ratio);
  }

  w.u64(db.entries().size());
  for (const auto& e : db.entries()) {
    w.str(e.certificate.bytes);
    w.u8(static_cast<std::uint8_t>(e.n));
    w.u8(static_cast<std::uint8_t>(e.p));
    w.u32(static_cast<std::uint32_t>(e.c_max));
    w.f64(e.expectation);
    w.f64(e.ratio);
    for (int l = 0; l < e.p; ++l) w.f64(e.gamma[static_cast<std::size_t>(l)]);
    for (int l = 0; l < e.p; ++l) w.f64(e.beta[static_cast<std::size_t>(l)]);
    w.u8(e.degenerate_angles ? 1 : 0);
    if (e.degenerate_angles) {
      w.u16(static_cast<std::uint16_t>(e.degenerate_angles->size()));
      for (const auto& a : *e.degenerate_angles) {
        for (int l = 0; l < e.p; ++l) w.f64(a.gamma[static_cast<std::size_t>(l)]);
        for (int l = 0; l < e.p; ++l) w.f64(a.beta[static_cast<std::size_t>(l)]);
      }
    }
    w.u16(static_cast<std::uint16_t>(e.orbit_count));
    w.i64(e.average_degree.num);
    w.i64(e.average_degree.den);
    w.str(e.source);
    w.u32(static_cast<std::uint32_t>(e.restarts));
  }

  std::string payload = w.bytes();
  std::uint64_t checksum = fnv1a64(payload);
  ByteWriter tail;
  tail.u64(checksum);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.write(tail.bytes().data(), static_cast<std::streamsize>(tail.bytes().size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Database load_db(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 14) throw std::runtime_error("database file truncated");

  std::string payload = data.substr(0, data.size() - 8);
  ByteReader tail(std::string_view(data).substr(data.size() - 8));
  std::uint64_t stored_checksum = tail.u64();
  if (fnv1a64(payload) != stored_checksum)
    throw std::runtime_error("database checksum mismatch (file corrupted or truncated)");

  ByteReader r(payload);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.u8());
  if (std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("bad database magic");
  std::uint16_t version = r.u16();
  if (version != kFormatVersion)
    throw std::runtime_error("unsupported database version " + std::to_string(version) +
                             " (expected " + std::to_string(kFormatVersion) + ")");

  DbMetadata m;
  m.seed = r.u64();
  m.degenerates = r.u8() != 0;
  std::uint16_t np = r.u16();
  for (int i = 0; i < np; ++i) m.p_values.push_back(static_cast<int>(r.u32()));
  std::uint16_t nr = r.u16();
  for (int i = 0; i < nr; ++i) m.restarts_per_p.push_back(static_cast<int>(r.u32()));
  m.tool_version = r.str();
  m.build_config = r.str();

  std::vector<FixedAngleEntry> fixed;
  std::uint32_t nfixed = r.u32();
  for (std::uint32_t i = 0; i < nfixed; ++i) {
    FixedAngleEntry f;
    f.degree = r.u16();
    f.p = r.u16();
    f.gamma.resize(static_cast<std::size_t>(f.p));
    f.beta.resize(static_cast<std::size_t>(f.p));
    for (auto& v : f.gamma) v = r.f64();
    for (auto& v : f.beta) v = r.f64();
    if (r.u8() != 0) f.expected_ratio = r.f64();
    fixed.push_back(std::move(f));
  }

  std::vector<DbEntry> entries;
  std::uint64_t nentries = r.u64();
  for (std::uint64_t i = 0; i < nentries; ++i) {
    DbEntry e;
    e.certificate.bytes = r.str();
    e.n = r.u8();
    e.p = r.u8();
    e.c_max = static_cast<int>(r.u32());
    e.expectation = r.f64();
    e.ratio = r.f64();
    e.gamma.resize(static_cast<std::size_t>(e.p));
    e.beta.resize(static_cast<std::size_t>(e.p));
    for (auto& v : e.gamma) v = r.f64();
    for (auto& v : e.beta) v = r.f64();
    if (r.u8() != 0) {
      std::uint16_t count = r.u16();
      std::vector<AngleVector> degen;
      for (int k = 0; k < count; ++k) {
        std::vector<double> dg(static_cast<std::size_t>(e.p)), db_(static_cast<std::size_t>(e.p));
        for (auto& v : dg) v = r.f64();
        for (auto& v : db_) v = r.f64();
        degen.push_back(make_angles(std::move(dg), std::move(db_), AngleUnit::PiUnits));
      }
      e.degenerate_angles = std::move(degen);
    }
    e.orbit_count = r.u16();
    e.average_degree.num = r.i64();
    e.average_degree.den = r.i64();
    e.source = r.str();
    e.restarts = static_cast<int>(r.u32());
    entries.push_back(std::move(e));
  }
  if (!r.exhausted()) throw std::runtime_error("trailing bytes in database file");
  return Database(std::move(entries), std::move(fixed), std::move(m));
}

}  // namespace qaoakit
