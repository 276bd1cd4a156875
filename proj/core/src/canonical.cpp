#include "qaoakit/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "qaoakit/graph6.hpp"

namespace qaoakit {

namespace {

constexpr int kMaxN = kMaxVertices;
constexpr int kCodeWords = (kMaxN * (kMaxN - 1) / 2 + 63) / 64;  // 30

// Ordered partition of [0, n) into contiguous cells.
//   order[i]      vertex at position i
//   cell_start[i] start position of the cell containing position i
// A cell begins at every position p with cell_start[p] == p.
struct Partition {
  std::array<std::int8_t, kMaxN> order;
  std::array<std::int8_t, kMaxN> cell_start;
};

struct AdjCode {
  std::array<std::uint64_t, kCodeWords> w{};
};

class IRSolver {
 public:
  IRSolver(int n, const std::uint64_t* adj) : n_(n), adj_(adj) {}

  void run() {
    Partition root;
    for (int i = 0; i < n_; ++i) {
      root.order[i] = static_cast<std::int8_t>(i);
      root.cell_start[i] = 0;
    }
    refine(root);
    search(root, 0);
  }

  std::vector<int> best_labeling() const {
    std::vector<int> lab(static_cast<std::size_t>(n_));
    for (int pos = 0; pos < n_; ++pos) lab[static_cast<std::size_t>(best_order_[pos])] = pos;
    return lab;
  }

  const std::vector<std::vector<int>>& generators() const { return generators_; }

 private:
  void refine(Partition& p) const {
  restart:
    for (int sb = 0; sb < n_;) {
      int se = cell_end(p, sb);
      std::uint64_t smask = 0;
      for (int i = sb; i < se; ++i) smask |= 1ull << p.order[i];
      for (int cb = 0; cb < n_;) {
        int ce = cell_end(p, cb);
        if (ce - cb > 1 && split_cell(p, cb, ce, smask)) goto restart;
        cb = ce;
      }
      sb = se;
    }
  }

  // Reorders the cell [cb, ce) by neighbor count in smask, ascending and
  // stable; installs new cell boundaries. Returns true when it split.
  bool split_cell(Partition& p, int cb, int ce, std::uint64_t smask) const {
    std::array<std::int8_t, kMaxN> cnt;
    int first = std::popcount(adj_[p.order[cb]] & smask);
    bool uniform = true;
    for (int i = cb; i < ce; ++i) {
      cnt[i] = static_cast<std::int8_t>(std::popcount(adj_[p.order[i]] & smask));
      if (cnt[i] != first) uniform = false;
    }
    if (uniform) return false;
    std::array<std::int8_t, kMaxN> verts;
    std::array<std::int8_t, kMaxN> keys;
    int m = ce - cb;
    for (int i = 0; i < m; ++i) {
      verts[i] = p.order[cb + i];
      keys[i] = cnt[cb + i];
    }
    std::array<int, kMaxN> idx;
    std::iota(idx.begin(), idx.begin() + m, 0);
    std::stable_sort(idx.begin(), idx.begin() + m,
                     [&](int a, int b) { return keys[a] < keys[b]; });
    for (int i = 0; i < m; ++i) p.order[cb + i] = verts[idx[i]];
    int start = cb;
    for (int i = 0; i < m; ++i) {
      if (i > 0 && keys[idx[i]] != keys[idx[i - 1]]) start = cb + i;
      p.cell_start[cb + i] = static_cast<std::int8_t>(start);
    }
    return true;
  }

  int cell_end(const Partition& p, int cb) const {
    int e = cb + 1;
    while (e < n_ && p.cell_start[e] != e) ++e;
    return e;
  }

  bool discrete(const Partition& p) const {
    for (int i = 0; i < n_; ++i)
      if (p.cell_start[i] != i) return false;
    return true;
  }

  int leading_singletons(const Partition& p) const {
    int k = 0;
    while (k < n_ && p.cell_start[k] == k && (k + 1 == n_ || p.cell_start[k + 1] == k + 1)) ++k;
    return k;
  }

  // First smallest non-singleton cell; isomorphism-invariant target choice.
  int target_cell(const Partition& p) const {
    int best = -1, best_size = n_ + 1;
    for (int cb = 0; cb < n_;) {
      int ce = cell_end(p, cb);
      if (ce - cb > 1 && ce - cb < best_size) {
        best = cb;
        best_size = ce - cb;
      }
      cb = ce;
    }
    return best;
  }

  // Adjacency bits of the first k relabeled vertices, upper triangle in
  // column order, packed so word comparison equals bit-lexicographic order.
  void partial_code(const Partition& p, int k, AdjCode& code, int& nbits) const {
    code.w.fill(0);
    int bit = 0;
    for (int col = 1; col < k; ++col) {
      std::uint64_t colmask = adj_[p.order[col]];
      for (int row = 0; row < col; ++row, ++bit) {
        if ((colmask >> p.order[row]) & 1ull) code.w[bit >> 6] |= 0x8000000000000000ull >> (bit & 63);
      }
    }
    nbits = bit;
  }

  // -1 / 0 / +1 comparison of the first nbits of a against b.
  static int compare_bits(const AdjCode& a, const AdjCode& b, int nbits) {
    int full = nbits >> 6;
    for (int w = 0; w < full; ++w) {
      if (a.w[w] != b.w[w]) return a.w[w] < b.w[w] ? -1 : 1;
    }
    int rem = nbits & 63;
    if (rem != 0) {
      std::uint64_t mask = ~0ull << (64 - rem);
      std::uint64_t aw = a.w[full] & mask, bw = b.w[full] & mask;
      if (aw != bw) return aw < bw ? -1 : 1;
    }
    return 0;
  }

  void handle_leaf(const Partition& p) {
    AdjCode code;
    int nbits = 0;
    partial_code(p, n_, code, nbits);
    if (!have_best_) {
      best_code_ = code;
      best_order_ = p.order;
      have_best_ = true;
      return;
    }
    int cmp = compare_bits(code, best_code_, nbits);
    if (cmp < 0) {
      best_code_ = code;
      best_order_ = p.order;
    } else if (cmp == 0) {
      record_automorphism(p.order);
    }
  }

  // Both orderings encode the same adjacency string, so
  // sigma(best_order[i]) = order[i] is an automorphism.
  void record_automorphism(const std::array<std::int8_t, kMaxN>& order) {
    std::vector<int> sigma(static_cast<std::size_t>(n_));
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      sigma[static_cast<std::size_t>(best_order_[i])] = order[i];
      if (best_order_[i] != order[i]) identity = false;
    }
    if (identity) return;
    for (const auto& g : generators_)
      if (g == sigma) return;
    generators_.push_back(std::move(sigma));
  }

  // Union-find orbits under generators fixing fixed_[0..depth) pointwise.
  void stabilizer_orbits(int depth, std::array<std::int8_t, kMaxN>& root) const {
    for (int v = 0; v < n_; ++v) root[v] = static_cast<std::int8_t>(v);
    auto find = [&](int v) {
      while (root[v] != v) {
        root[v] = root[root[v]];
        v = root[v];
      }
      return v;
    };
    for (const auto& g : generators_) {
      bool fixes = true;
      for (int i = 0; i < depth && fixes; ++i)
        if (g[static_cast<std::size_t>(fixed_[i])] != fixed_[i]) fixes = false;
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        int a = find(v), b = find(g[static_cast<std::size_t>(v)]);
        if (a != b) root[std::max(a, b)] = static_cast<std::int8_t>(std::min(a, b));
      }
    }
    for (int v = 0; v < n_; ++v) root[v] = static_cast<std::int8_t>(find(v));
  }

  void search(const Partition& p, int depth) {
    if (discrete(p)) {
      handle_leaf(p);
      return;
    }
    int cb = target_cell(p);
    int ce = cell_end(p, cb);
    std::array<std::int8_t, kMaxN> cand;
    int ncand = 0;
    for (int i = cb; i < ce; ++i) cand[ncand++] = p.order[i];
    std::sort(cand.begin(), cand.begin() + ncand);

    std::array<std::int8_t, kMaxN> tried;
    int ntried = 0;
    std::array<std::int8_t, kMaxN> root;
    for (int ci = 0; ci < ncand; ++ci) {
      int v = cand[ci];
      if (ntried > 0) {
        stabilizer_orbits(depth, root);
        bool skip = false;
        for (int t = 0; t < ntried && !skip; ++t)
          if (root[v] == root[tried[t]]) skip = true;
        if (skip) {
          tried[ntried++] = static_cast<std::int8_t>(v);
          continue;
        }
      }
      Partition child = p;
      individualize(child, cb, ce, v);
      refine(child);
      bool prune = false;
      if (have_best_) {
        int k = leading_singletons(child);
        if (k > 1) {
          AdjCode code;
          int nbits = 0;
          partial_code(child, k, code, nbits);
          if (compare_bits(code, best_code_, nbits) > 0) prune = true;
        }
      }
      if (!prune) {
        fixed_[depth] = static_cast<std::int8_t>(v);
        search(child, depth + 1);
      }
      tried[ntried++] = static_cast<std::int8_t>(v);
    }
  }

  static void individualize(Partition& p, int cb, int ce, int v) {
    int pos = cb;
    while (p.order[pos] != v) ++pos;
    for (int i = pos; i > cb; --i) p.order[i] = p.order[i - 1];
    p.order[cb] = static_cast<std::int8_t>(v);
    p.cell_start[cb] = static_cast<std::int8_t>(cb);
    for (int i = cb + 1; i < ce; ++i) p.cell_start[i] = static_cast<std::int8_t>(cb + 1);
  }

  int n_;
  const std::uint64_t* adj_;
  bool have_best_ = false;
  AdjCode best_code_{};
  std::array<std::int8_t, kMaxN> best_order_{};
  std::array<std::int8_t, kMaxN> fixed_{};
  std::vector<std::vector<int>> generators_;
};

std::vector<std::uint64_t> adjacency_of(const Graph& g) {
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) adj[static_cast<std::size_t>(v)] = g.adjacency_mask(v);
  return adj;
}

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
  auto adj = adjacency_of(g);
  IRSolver solver(g.vertex_count(), adj.data());
  solver.run();
  auto labeling = solver.best_labeling();
  return CanonicalForm{permuted(g, labeling), std::move(labeling)};
}

Certificate canonical_certificate(const Graph& g) {
  auto adj = adjacency_of(g);
  return Certificate{canonical_g6_raw(g.vertex_count(), adj.data())};
}

std::string canonical_g6_raw(int n, const std::uint64_t* adj) {
  IRSolver solver(n, adj);
  solver.run();
  auto labeling = solver.best_labeling();
  // graph6 of the relabeled adjacency, built directly from masks
  int nbits = n * (n - 1) / 2;
  int nchars = (nbits + 5) / 6;
  std::vector<int> inv(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) inv[static_cast<std::size_t>(labeling[static_cast<std::size_t>(v)])] = v;
  std::string out;
  out.reserve(static_cast<std::size_t>(nchars) + 1);
  out.push_back(static_cast<char>(63 + n));
  int bit = 0;
  int val = 0;
  for (int col = 1; col < n; ++col) {
    std::uint64_t colmask = adj[inv[static_cast<std::size_t>(col)]];
    for (int row = 0; row < col; ++row) {
      val = (val << 1) | static_cast<int>((colmask >> inv[static_cast<std::size_t>(row)]) & 1ull);
      if (++bit % 6 == 0) {
        out.push_back(static_cast<char>(63 + val));
        val = 0;
      }
    }
  }
  if (bit % 6 != 0) out.push_back(static_cast<char>(63 + (val << (6 - bit % 6))));
  return out;
}

std::vector<std::vector<int>> automorphism_generators(const Graph& g) {
  auto adj = adjacency_of(g);
  IRSolver solver(g.vertex_count(), adj.data());
  solver.run();
  return solver.generators();
}

OrbitPartition vertex_orbits(const Graph& g) {
  int n = g.vertex_count();
  auto gens = automorphism_generators(g);
  std::vector<int> root(static_cast<std::size_t>(n));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[static_cast<std::size_t>(v)] != v) {
      root[static_cast<std::size_t>(v)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
      v = root[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const auto& sigma : gens) {
    for (int v = 0; v < n; ++v) {
      int a = find(v), b = find(sigma[static_cast<std::size_t>(v)]);
      if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  OrbitPartition part;
  part.orbit_of.assign(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (part.orbit_of[static_cast<std::size_t>(r)] == -1) {
      part.orbit_of[static_cast<std::size_t>(r)] = static_cast<int>(part.orbits.size());
      part.orbits.emplace_back();
    }
    int idx = part.orbit_of[static_cast<std::size_t>(r)];
    part.orbit_of[static_cast<std::size_t>(v)] = idx;
    part.orbits[static_cast<std::size_t>(idx)].push_back(v);
  }
  return part;
}

}  // namespace qaoakit
