#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qaoakit/enumerate.hpp"
#include "qaoakit/graph6.hpp"
#include "qaoakit/paramdb.hpp"
#include "qaoakit/symmetry.hpp"
#include "test_util.hpp"

using namespace qaoakit;
using namespace qaoakit::testing;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

Database small_db(bool degenerates = false) {
  std::vector<Graph> graphs;
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : enumerate_connected(n)) graphs.push_back(g);
  BuildOptions opt;
  opt.p_values = {1};
  opt.opt.seed = 11;
  opt.enumerate_degenerates = degenerates;
  opt.threads = 2;
  return build_db(graphs, opt);
}

}  // namespace

TEST_CASE("build_db over n <= 5 at p = 1 yields 30 entries") {
  std::vector<Graph> graphs;
  graphs.push_back(Graph());  // edgeless; must be skipped with a warning
  for (int n = 2; n <= 5; ++n)
    for (const auto& g : enumerate_connected(n)) graphs.push_back(g);
  BuildOptions opt;
  opt.p_values = {1};
  opt.opt.seed = 5;
  opt.threads = 2;
  std::vector<std::string> warnings;
  Database db = build_db(graphs, opt, &warnings);
  CHECK(db.entries().size() == 30);  // 1 + 2 + 6 + 21 connected graphs on 2..5 vertices
  CHECK(warnings.size() == 1);

  for (const auto& e : db.entries()) {
    CHECK(e.ratio == doctest::Approx(e.expectation / e.c_max).epsilon(1e-12));
    CHECK(e.ratio > 0.0);
    CHECK(e.ratio <= 1.0 + 1e-12);
    CHECK(e.restarts == 50);
    // stored angles are sector-normalized
    Graph g = parse_graph6(e.certificate.bytes);
    auto norm = normalize_to_sector(e.angles(), graph_parity(g));
    CHECK(norm == e.angles());
    // re-simulation reproduces the stored expectation
    double f = expected_cut(g, convert_units(e.angles(), AngleUnit::Radians));
    CHECK(f == doctest::Approx(e.expectation).epsilon(1e-8));
  }
}

TEST_CASE("K2 entry reaches the grid-oracle optimum") {
  Database db = small_db();
  auto r = lookup(db, complete_graph(2), 1);
  REQUIRE(r.kind == LookupKind::Exact);
  CHECK(r.entry->expectation == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.entry->ratio == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("lookup is isomorphism-invariant") {
  Database db = small_db();
  Graph p3 = path_graph(3);
  auto direct = lookup(db, p3, 1);
  REQUIRE(direct.kind == LookupKind::Exact);
  SplitMix64 rng(1);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> perm = {0, 1, 2};
    for (int i = 2; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
    auto relabeled = lookup(db, permuted(p3, perm), 1);
    REQUIRE(relabeled.kind == LookupKind::Exact);
    CHECK(relabeled.entry == direct.entry);
  }
}

TEST_CASE("lookup falls back to the nearest-degree fixed angles") {
  std::vector<FixedAngleEntry> fixed;
  fixed.push_back(FixedAngleEntry{3, 1, {0.191}, {0.120}, 0.6924});
  fixed.push_back(FixedAngleEntry{4, 1, {0.2}, {0.1}, std::nullopt});
  Database db({}, std::move(fixed), {});

  // 3-regular graph not in the database -> degree-3 entry
  auto r = lookup(db, petersen_graph(), 1);
  REQUIRE(r.kind == LookupKind::FixedAngleFallback);
  CHECK(r.fixed_entry->degree == 3);
  CHECK(r.angles->gamma[0] == doctest::Approx(0.191));

  // average degree 3.5 ties between 3 and 4 -> lower degree wins
  Graph g7 = complete_bipartite(3, 4);  // degrees 4,4,4,3,3,3,3 -> avg 24/7
  auto r2 = lookup(db, g7, 1);
  REQUIRE(r2.kind == LookupKind::FixedAngleFallback);
  CHECK(r2.fixed_entry->degree == 3);

  // no entries at the requested depth
  CHECK(lookup(db, petersen_graph(), 7).kind == LookupKind::NotFound);
}

TEST_CASE("median_angles") {
  std::vector<DbEntry> entries;
  for (int i = 0; i < 3; ++i) {
    DbEntry e;
    e.certificate.bytes = "cert" + std::to_string(i);
    e.n = 3;
    e.p = 1;
    e.gamma = {0.1 * (i + 1)};
    e.beta = {-0.05 * (i + 1)};
    e.c_max = 2;
    e.expectation = 1.5;
    e.ratio = 0.75;
    entries.push_back(e);
  }
  Database db(std::move(entries), {}, {});
  auto med = median_angles(db, [](const DbEntry&) { return true; }, 1);
  CHECK(med.gamma[0] == doctest::Approx(0.2));
  CHECK(med.beta[0] == doctest::Approx(-0.1));

  auto single = median_angles(db, [](const DbEntry& e) { return e.certificate.bytes == "cert0"; }, 1);
  CHECK(single.gamma[0] == doctest::Approx(0.1));

  CHECK_THROWS_AS(median_angles(db, [](const DbEntry&) { return false; }, 1),
                  std::invalid_argument);
}

TEST_CASE("median over an even count averages the middle pair") {
  std::vector<DbEntry> entries;
  for (int i = 0; i < 4; ++i) {
    DbEntry e;
    e.certificate.bytes = "c" + std::to_string(i);
    e.p = 1;
    e.gamma = {static_cast<double>(i)};
    e.beta = {0.0};
    e.c_max = 1;
    e.expectation = 0.5;
    e.ratio = 0.5;
    entries.push_back(e);
  }
  Database db(std::move(entries), {}, {});
  CHECK(median_angles(db, [](const DbEntry&) { return true; }, 1).gamma[0] ==
        doctest::Approx(1.5));
}

TEST_CASE("ingest JSON lines") {
  auto path = temp_file("qaoakit_test_raw.jsonl");
  write_file(path,
             R"({"graph6": "Bw", "p": 1, "gamma": [0.6], "beta": [0.3], "units": "rad", "c_max": 2, "expectation": 1.5, "source": "unit-test"})"
             "\n"
             R"({"graph6": "A_", "p": 1, "gamma": [0.5, 0.5], "beta": [0.125], "units": "pi", "c_max": 1, "expectation": 1.0})"
             "\n"
             R"({"degree": 3, "p": 1, "gamma": [0.191], "beta": [0.120], "expected_ratio": 0.69})"
             "\n"
             R"({"graph6": "Bw", "p": 1, "gamma": [0.6], "beta": [0.3], "c_max": 2, "expectation": 1.5, "mystery": 7})"
             "\n"
             R"({"p": 1, "gamma": [0.1], "beta": [0.1], "c_max": 1, "expectation": 0.6})"
             "\n");
  auto report = ingest_raw(path.string(), RawFormat::JsonLines);
  CHECK(report.records.size() == 3);  // line 2 (length mismatch) and 5 (no graph6) rejected
  CHECK(report.errors.size() == 2);
  CHECK(report.warnings.size() == 1);  // unknown field 'mystery'
  CHECK(report.records[1].kind == RawRecord::Kind::FixedAngles);
  std::remove(path.string().c_str());
}

TEST_CASE("CSV ingestion matches the JSON form") {
  auto jsonl = temp_file("qaoakit_test_eq.jsonl");
  auto csv = temp_file("qaoakit_test_eq.csv");
  write_file(jsonl,
             R"({"graph6": "Bw", "p": 2, "gamma": [0.6, 0.2], "beta": [0.3, 0.1], "units": "rad", "c_max": 2, "expectation": 1.5, "source": "s", "restarts": 9})"
             "\n");
  write_file(csv,
             "graph6,p,gamma,beta,units,c_max,expectation,source,restarts\n"
             "Bw,2,0.6;0.2,0.3;0.1,rad,2,1.5,s,9\n");
  auto a = ingest_raw(jsonl.string(), RawFormat::JsonLines);
  auto b = ingest_raw(csv.string(), RawFormat::Csv);
  REQUIRE(a.records.size() == 1);
  REQUIRE(b.records.size() == 1);
  CHECK(a.records[0].graph6 == b.records[0].graph6);
  CHECK(a.records[0].gamma == b.records[0].gamma);
  CHECK(a.records[0].beta == b.records[0].beta);
  CHECK(a.records[0].c_max == b.records[0].c_max);
  CHECK(a.records[0].restarts == b.records[0].restarts);
  std::remove(jsonl.string().c_str());
  std::remove(csv.string().c_str());
}

TEST_CASE("compile validates by re-simulation and fixes gamma-sign mismatches") {
  // triangle at p=1: F(gamma, beta) with our convention
  Graph k3 = complete_graph(3);
  AngleVector a = make_angles({0.6}, {0.3}, AngleUnit::Radians);
  double f = expected_cut(k3, a);

  RawRecord good;
  good.graph6 = "Bw";
  good.p = 1;
  good.gamma = {0.6};
  good.beta = {0.3};
  good.units = AngleUnit::Radians;
  good.c_max = 2;
  good.expectation = f;
  good.origin = "mem:1";

  // same record with the opposite gamma sign convention
  RawRecord flipped = good;
  flipped.gamma = {-0.6};
  flipped.origin = "mem:2";

  // wrong expectation under both conventions
  RawRecord bad = good;
  bad.expectation = f + 0.25;
  bad.origin = "mem:3";

  // expectation above c_max
  RawRecord impossible = good;
  impossible.expectation = 2.5;
  impossible.origin = "mem:4";

  auto report = compile_db({good, flipped, bad, impossible});
  CHECK(report.db.entries().size() == 1);  // good and flipped collapse to one key
  CHECK(report.quarantined.size() == 2);

  const DbEntry& e = report.db.entries()[0];
  CHECK(e.expectation == doctest::Approx(f).epsilon(1e-9));
  Graph decoded = parse_graph6(e.certificate.bytes);
  double resim = expected_cut(decoded, convert_units(e.angles(), AngleUnit::Radians));
  CHECK(resim == doctest::Approx(e.expectation).epsilon(1e-9));
}

TEST_CASE("compile deduplicates isomorphic relabelings, keeping the higher expectation") {
  Graph p3a = path_graph(3);
  Graph p3b = permuted(p3a, {1, 0, 2});
  auto mk = [&](const Graph& g, double gamma) {
    RawRecord r;
    r.graph6 = write_graph6(g);
    r.p = 1;
    r.gamma = {gamma};
    r.beta = {0.3};
    r.units = AngleUnit::Radians;
    r.c_max = 2;
    r.expectation = expected_cut(g, make_angles({gamma}, {0.3}, AngleUnit::Radians));
    r.origin = "mem";
    return r;
  };
  auto lo = mk(p3a, 0.2);
  auto hi = mk(p3b, 0.55);
  REQUIRE(*hi.expectation > *lo.expectation);
  auto report = compile_db({lo, hi});
  CHECK(report.db.entries().size() == 1);
  CHECK(report.db.entries()[0].expectation == doctest::Approx(*hi.expectation).epsilon(1e-9));
}

TEST_CASE("save/load round trip") {
  Database db = small_db(true);
  auto path = temp_file("qaoakit_test_db.qkdb");
  save_db(db, path.string());
  Database loaded = load_db(path.string());
  CHECK(loaded == db);
  std::remove(path.string().c_str());
}

TEST_CASE("load rejects corruption, truncation, and future versions") {
  Database db = small_db();
  auto path = temp_file("qaoakit_test_bad.qkdb");
  save_db(db, path.string());

  std::ifstream in(path.string(), std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();

  // truncated file -> checksum error
  write_file(path, bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_WITH_AS(load_db(path.string()),
                       doctest::Contains("checksum"), std::runtime_error);

  // flipped payload byte -> checksum error
  std::string corrupted = bytes;
  corrupted[10] = static_cast<char>(corrupted[10] ^ 0x5a);
  write_file(path, corrupted);
  CHECK_THROWS_WITH_AS(load_db(path.string()),
                       doctest::Contains("checksum"), std::runtime_error);

  // future version with a valid checksum -> version error
  std::string future = bytes.substr(0, bytes.size() - 8);
  future[4] = 9;  // bump the little-endian u16 version
  std::uint64_t ck = fnv1a64(future);
  for (int i = 0; i < 8; ++i) future.push_back(static_cast<char>((ck >> (8 * i)) & 0xff));
  write_file(path, future);
  CHECK_THROWS_WITH_AS(load_db(path.string()),
                       doctest::Contains("version"), std::runtime_error);

  // bad magic with a valid checksum
  std::string nomagic = bytes.substr(0, bytes.size() - 8);
  nomagic[0] = 'X';
  ck = fnv1a64(nomagic);
  for (int i = 0; i < 8; ++i) nomagic.push_back(static_cast<char>((ck >> (8 * i)) & 0xff));
  write_file(path, nomagic);
  CHECK_THROWS_WITH_AS(load_db(path.string()),
                       doctest::Contains("magic"), std::runtime_error);

  std::remove(path.string().c_str());
}

TEST_CASE("rebuild with the same seed is byte-identical") {
  Database a = small_db();
  Database b = small_db();
  auto pa = temp_file("qaoakit_test_a.qkdb");
  auto pb = temp_file("qaoakit_test_b.qkdb");
  save_db(a, pa.string());
  save_db(b, pb.string());
  std::ifstream fa(pa.string(), std::ios::binary), fb(pb.string(), std::ios::binary);
  std::string ba((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  std::string bb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  CHECK(ba == bb);
  std::remove(pa.string().c_str());
  std::remove(pb.string().c_str());
}

TEST_CASE("unit conversion round trip on stored angles") {
  auto a = make_angles({0.5}, {0.125}, AngleUnit::PiUnits);
  auto rt = convert_units(convert_units(a, AngleUnit::Radians), AngleUnit::PiUnits);
  CHECK(rt.gamma[0] == doctest::Approx(a.gamma[0]).epsilon(1e-15));
  CHECK(rt.beta[0] == doctest::Approx(a.beta[0]).epsilon(1e-15));
}
