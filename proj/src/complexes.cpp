#include "pgc/complexes.hpp"

#include <numeric>
#include <set>
#include <thread>

#include "pgc/errors.hpp"

namespace pgc {

void add_signed(Chain& c, const SignedCanonicalGraph& g, const Rational& scale) {
  if (g.sign == 0 || scale == 0) return;
  c.add(g.graph, g.sign > 0 ? scale : Rational(-scale));
}

Chain to_chain(const SignedCanonicalGraph& g) {
  Chain c;
  add_signed(c, g);
  return c;
}

namespace {

bool internal_valence_ok(const CanonicalGraph& g, int min_valence) {
  std::vector<int> valence(static_cast<std::size_t>(g.n() + g.internal_count), 0);
  for (const Edge& e : g.edges) {
    ++valence[static_cast<std::size_t>(e.a)];
    ++valence[static_cast<std::size_t>(e.b)];
  }
  for (int v = g.n(); v < g.n() + g.internal_count; ++v) {
    if (valence[static_cast<std::size_t>(v)] < min_valence) return false;
  }
  return true;
}

Admissibility rule_for(Mode mode) {
  return mode == Mode::projective ? Admissibility::projective : Admissibility::kontsevich;
}

// Visit every k-subset of `pool` (as index lists, lexicographic order).
template <class F>
void for_each_subset(const std::vector<Edge>& pool, int k, F&& f) {
  if (k < 0 || k > static_cast<int>(pool.size())) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  const int p = static_cast<int>(pool.size());
  std::vector<Edge> chosen(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) chosen[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    f(chosen);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == p - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

int max_edge_count(int n, int m, BasisKind) {
  int v = n + m;
  return v * (v - 1) / 2;
}

std::vector<CanonicalGraph> enumerate_basis(const std::vector<Label>& externals, int m,
                                            int edge_count, BasisKind kind) {
  if (m < 0 || edge_count < 0) return {};
  const int n = static_cast<int>(externals.size());
  if (kind == BasisKind::projective_based && n == 0 && m > 0) return {};
  const Mode mode = kind == BasisKind::kontsevich ? Mode::affine : Mode::projective;
  const Admissibility rule = rule_for(mode);
  const int min_valence = rule == Admissibility::projective ? 4 : 3;
  const int v = n + m;

  std::vector<Edge> forced, pool;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      if (kind == BasisKind::projective_based && a == 0 && b >= n) {
        forced.emplace_back(a, b);
      } else {
        pool.emplace_back(a, b);
      }
    }
  }

  std::set<CanonicalGraph> found;
  std::vector<int> valence(static_cast<std::size_t>(v));
  for_each_subset(pool, edge_count - static_cast<int>(forced.size()), [&](const std::vector<Edge>& chosen) {
    std::fill(valence.begin(), valence.end(), 0);
    for (const Edge& e : forced) ++valence[static_cast<std::size_t>(e.b)];
    for (const Edge& e : chosen) {
      ++valence[static_cast<std::size_t>(e.a)];
      ++valence[static_cast<std::size_t>(e.b)];
    }
    for (int k = n; k < v; ++k) {
      if (valence[static_cast<std::size_t>(k)] < min_valence) return;
    }
    std::vector<Edge> edges = forced;
    edges.insert(edges.end(), chosen.begin(), chosen.end());
    std::sort(edges.begin(), edges.end());
    OrientedGraph g = OrientedGraph::from_edges(externals, m, mode, edges);
    if (!is_admissible(g, rule)) return;
    SignedCanonicalGraph c = canonicalize(g);
    if (c.sign != 0) found.insert(std::move(c.graph));
  });
  return {found.begin(), found.end()};
}

bool is_based(const CanonicalGraph& g) {
  if (g.mode != Mode::projective) return false;
  if (g.internal_count == 0) return true;
  if (g.n() == 0) return false;
  std::vector<char> joined(static_cast<std::size_t>(g.internal_count), 0);
  for (const Edge& e : g.edges) {
    if (e.a == 0 && e.b >= g.n()) joined[static_cast<std::size_t>(e.b - g.n())] = 1;
  }
  return std::all_of(joined.begin(), joined.end(), [](char c) { return c != 0; });
}

int filtration_level(const CanonicalGraph& g) {
  int level = 0;
  for (const Edge& e : g.edges) {
    if (e.a == 0 && e.b < g.n()) ++level;
  }
  return level;
}

bool has_detached_internals(const CanonicalGraph& g) {
  if (g.internal_count == 0) return false;
  const int v = g.n() + g.internal_count;
  std::vector<int> parent(static_cast<std::size_t>(v));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const Edge& e : g.edges) {
    if (e.a == 0) continue;
    parent[static_cast<std::size_t>(find(e.a))] = find(e.b);
  }
  std::vector<char> anchored(static_cast<std::size_t>(v), 0);
  for (int x = 1; x < g.n(); ++x) anchored[static_cast<std::size_t>(find(x))] = 1;
  for (int x = g.n(); x < v; ++x) {
    if (!anchored[static_cast<std::size_t>(find(x))]) return true;
  }
  return false;
}

Chain apply_p(const CanonicalGraph& g, VertexId vertex) {
  OrientedGraph og = g.oriented();
  if (!og.is_internal(vertex) || vertex >= og.vertex_count()) {
    throw ArgumentError("P needs an internal vertex");
  }
  if (g.n() == 0) throw ArgumentError("P needs a basepoint");
  const Edge to_base(0, vertex);
  if (og.has_edge(to_base)) return to_chain({g, 1});
  std::vector<Edge> star = og.incident(vertex);
  og.prepend(Letter::edge(to_base));
  Chain out;
  for (const Edge& e : star) {
    OrientedGraph h = og;
    int s = h.delete_edge(e);
    add_signed(out, canonicalize(h), Rational(-s));
  }
  return out;
}

namespace {

std::optional<VertexId> first_unbased(const CanonicalGraph& g, POrder order) {
  std::vector<char> joined(static_cast<std::size_t>(g.internal_count), 0);
  for (const Edge& e : g.edges) {
    if (e.a == 0 && e.b >= g.n()) joined[static_cast<std::size_t>(e.b - g.n())] = 1;
  }
  if (order == POrder::ascending) {
    for (int k = 0; k < g.internal_count; ++k) {
      if (!joined[static_cast<std::size_t>(k)]) return g.n() + k;
    }
  } else {
    for (int k = g.internal_count - 1; k >= 0; --k) {
      if (!joined[static_cast<std::size_t>(k)]) return g.n() + k;
    }
  }
  return std::nullopt;
}

}  // namespace

Chain reduce_to_based(const Chain& x, POrder order) {
  Chain pending;
  for (const auto& [g, c] : x) {
    if (g.mode != Mode::projective) throw ContractViolation("reduce_to_based on a non-projective key");
    if (is_admissible(g, Admissibility::projective)) pending.add(g, c);
  }
  Chain done;
  while (!pending.empty()) {
    Chain next;
    for (const auto& [g, c] : pending) {
      auto v = first_unbased(g, order);
      if (!v) {
        done.add(g, c);
        continue;
      }
      // A vertex of valence < 4 stays so under further rewrites: drop early.
      for (const auto& [h, d] : apply_p(g, *v)) {
        if (internal_valence_ok(h, 4)) next.add(h, c * d);
      }
    }
    pending = std::move(next);
  }
  Chain out;
  for (const auto& [g, c] : done) {
    if (is_admissible(g, Admissibility::projective)) out.add(g, c);
  }
  return out;
}

Chain pinwheel_vector(const CanonicalGraph& g, VertexId vertex) {
  OrientedGraph og = g.oriented();
  if (vertex < og.n() || vertex >= og.vertex_count()) {
    throw ArgumentError("pinwheel relation needs an internal vertex");
  }
  Chain out;
  for (const Edge& e : og.incident(vertex)) {
    OrientedGraph h = og;
    int s = h.delete_edge(e);
    add_signed(out, canonicalize(h), Rational(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// psi

Chain psi(const AffineElement& x, Label basepoint) {
  const CanonicalGraph& a = x.graph;
  if (a.mode != Mode::affine) throw ArgumentError("psi expects an affine graph");
  if (!a.externals.empty() && a.externals.front() <= basepoint) {
    throw ArgumentError("basepoint must be smaller than every external label");
  }
  std::vector<Label> externals{basepoint};
  externals.insert(externals.end(), a.externals.begin(), a.externals.end());
  const int n = static_cast<int>(externals.size());
  std::vector<Letter> word;
  for (const Edge& e : a.edges) word.push_back(Letter::edge(Edge(e.a + 1, e.b + 1)));
  for (Label l : x.eta) {
    auto it = std::lower_bound(a.externals.begin(), a.externals.end(), l);
    if (it == a.externals.end() || *it != l) {
      throw ArgumentError("eta index " + std::to_string(l) + " is not an external label");
    }
    word.push_back(Letter::edge(Edge(0, static_cast<VertexId>(it - a.externals.begin()) + 1)));
  }
  for (int k = 0; k < a.internal_count; ++k) {
    word.push_back(Letter::edge(Edge(0, n + k)));
    word.push_back(Letter::vertex(n + k));
  }
  OrientedGraph g(std::move(externals), a.internal_count, Mode::projective, std::move(word));
  return to_chain(canonicalize(g));
}

Chain psi(const AffineChain& x, Label basepoint) {
  Chain out;
  for (const auto& [key, c] : x) out.add(psi(key, basepoint), c);
  return out;
}

AffineChain psi_inverse(const Chain& b) {
  AffineChain out;
  for (const auto& [g, c] : b) {
    if (!is_based(g) || g.n() == 0) throw ContractViolation("psi_inverse needs based graphs");
    AffineElement key;
    std::vector<Label> externals(g.externals.begin() + 1, g.externals.end());
    std::vector<Edge> edges;
    for (const Edge& e : g.edges) {
      if (e.a == 0) {
        if (e.b < g.n()) key.eta.push_back(g.externals[static_cast<std::size_t>(e.b)]);
      } else {
        edges.emplace_back(e.a - 1, e.b - 1);
      }
    }
    SignedCanonicalGraph a = canonicalize(
        OrientedGraph::from_edges(std::move(externals), g.internal_count, Mode::affine, edges));
    if (a.sign == 0) continue;
    key.graph = std::move(a.graph);
    Chain image = psi(key, g.externals.front());
    if (image.size() != 1 || image.begin()->first != g) {
      throw ContractViolation("psi_inverse: rebuilt graph does not match " + describe(g));
    }
    out.add(key, c * image.begin()->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Differentials

Chain d_kontsevich(const Chain& x) {
  Chain out;
  for (const auto& [g, c] : x) {
    if (g.mode != Mode::affine) throw ContractViolation("d_kontsevich on a projective key");
    OrientedGraph og = g.oriented();
    for (const Edge& e : g.edges) {
      if (!og.is_internal(e.b)) continue;  // e.b is the larger endpoint
      OrientedGraph h = og;
      int s = h.contract_edge(e, e.b);
      if (s == 0) continue;
      SignedCanonicalGraph r = canonicalize(h);
      if (!is_admissible(r.graph, Admissibility::kontsevich)) continue;
      add_signed(out, r, c * s);
    }
  }
  return out;
}

AffineChain d_aff(const AffineChain& x) {
  AffineChain out;
  for (const auto& [key, c] : x) {
    Chain single;
    single.add(key.graph, c);
    for (const auto& [g, d] : d_kontsevich(single)) out.add(AffineElement{g, key.eta}, d);
  }
  return out;
}

Chain d_proj_raw(const CanonicalGraph& g, HeadRule rule) {
  if (g.mode != Mode::projective) throw ContractViolation("d_proj on an affine key");
  OrientedGraph og = g.oriented();
  SignedCanonicalGraph self{g, 1};
  Chain out;
  for (const Edge& e : g.edges) {
    if (!og.is_internal(e.b)) continue;
    VertexId head = e.b;
    if (og.is_internal(e.a) && rule == HeadRule::smaller_id) head = e.a;
    for (const Edge& f : og.incident(head)) {
      if (f == e) continue;
      if (auto r = oslash(self, e, head, f)) add_signed(out, *r);
    }
  }
  return out;
}

Chain d_proj(const Chain& x, HeadRule rule) {
  Chain raw;
  for (const auto& [g, c] : reduce_to_based(x)) raw.add(d_proj_raw(g, rule), c);
  return reduce_to_based(raw);
}

Chain glue_product(const Chain& x, const Chain& y) {
  Chain out;
  std::optional<Mode> mode;
  for (const auto& [a, ca] : x) {
    for (const auto& [b, cb] : y) {
      if (a.externals != b.externals || a.mode != b.mode) {
        throw ArgumentError("glue_product needs matching externals and mode");
      }
      mode = a.mode;
      const int n = a.n();
      const int shift = a.internal_count;
      auto moved = [&](VertexId v) { return v >= n ? v + shift : v; };
      std::vector<Letter> word;
      std::set<Edge> seen(a.edges.begin(), a.edges.end());
      if (a.mode == Mode::projective) {
        for (int k = 0; k < a.internal_count; ++k) word.push_back(Letter::vertex(n + k));
      }
      for (const Edge& e : a.edges) word.push_back(Letter::edge(e));
      if (b.mode == Mode::projective) {
        for (int k = 0; k < b.internal_count; ++k) word.push_back(Letter::vertex(n + shift + k));
      }
      bool doubled = false;
      for (const Edge& e : b.edges) {
        Edge m(moved(e.a), moved(e.b));
        if (!seen.insert(m).second) {
          doubled = true;
          break;
        }
        word.push_back(Letter::edge(m));
      }
      if (doubled) continue;
      OrientedGraph g(a.externals, a.internal_count + b.internal_count, a.mode, std::move(word));
      add_signed(out, canonicalize(g), ca * cb);
    }
  }
  if (mode == Mode::projective) return reduce_to_based(out);
  return out;
}

Chain relabel(const Chain& x, const std::map<Label, Label>& sigma) {
  Chain out;
  for (const auto& [g, c] : x) add_signed(out, relabel_external({g, 1}, sigma), c);
  return out;
}

// ---------------------------------------------------------------------------
// Graded bases

namespace {

int degree_of(BasisKind kind, int edges, int m) {
  return kind == BasisKind::kontsevich ? edges - 2 * m : edges - 3 * m;
}

}  // namespace

GradedBasis::GradedBasis(std::vector<Label> externals, BasisKind kind, int max_internal,
                         const Loader& loader)
    : externals_(std::move(externals)), kind_(kind), max_internal_(max_internal) {
  if (max_internal < 0) throw ArgumentError("max internal count must be non-negative");
  const int n = static_cast<int>(externals_.size());
  for (int m = 0; m <= max_internal; ++m) {
    for (int e = 0; e <= max_edge_count(n, m, kind); ++e) {
      int d = degree_of(kind, e, m);
      add_block(d, m, loader ? loader(d, m) : enumerate_basis(externals_, m, e, kind));
    }
  }
}

GradedBasis GradedBasis::for_weight(std::vector<Label> externals, BasisKind kind, int weight,
                                    DetachedRule detached) {
  if (kind != BasisKind::projective_based) {
    throw ArgumentError("weight-bounded bases are only finite for based projective graphs");
  }
  if (weight < 0) throw ArgumentError("weight must be non-negative");
  GradedBasis b;
  b.externals_ = std::move(externals);
  b.kind_ = kind;
  b.detached_ = detached;
  // Valence >= 4 plus the based condition force m <= 2w, and equality
  // isolates the internals with u0, which the component rule kills.
  b.max_internal_ = weight == 0 ? 0 : 2 * weight - 1;
  const int n = static_cast<int>(b.externals_.size());
  for (int m = 0; m <= b.max_internal_; ++m) {
    int e = weight + 2 * m;
    if (e > max_edge_count(n, m, kind)) continue;
    auto graphs = enumerate_basis(b.externals_, m, e, kind);
    if (detached == DetachedRule::kill) std::erase_if(graphs, has_detached_internals);
    b.add_block(e - 3 * m, m, std::move(graphs));
  }
  return b;
}

void GradedBasis::add_block(int degree, int m, std::vector<CanonicalGraph> graphs) {
  if (graphs.empty()) return;
  if (max_degree_ < min_degree_) {
    min_degree_ = max_degree_ = degree;
  } else {
    min_degree_ = std::min(min_degree_, degree);
    max_degree_ = std::max(max_degree_, degree);
  }
  auto& block = blocks_[{degree, m}];
  block.insert(block.end(), std::make_move_iterator(graphs.begin()),
               std::make_move_iterator(graphs.end()));
  std::sort(block.begin(), block.end());
}

const std::vector<CanonicalGraph>& GradedBasis::block(int degree, int m) const {
  static const std::vector<CanonicalGraph> empty;
  auto it = blocks_.find({degree, m});
  return it == blocks_.end() ? empty : it->second;
}

std::vector<CanonicalGraph> GradedBasis::slice(int degree) const {
  std::vector<CanonicalGraph> out;
  for (int m = 0; m <= max_internal_; ++m) {
    const auto& b = block(degree, m);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::size_t GradedBasis::total_size() const {
  std::size_t total = 0;
  for (const auto& [key, graphs] : blocks_) total += graphs.size();
  return total;
}

SparseMatrix assemble_differential(const std::vector<CanonicalGraph>& src,
                                   const std::vector<CanonicalGraph>& dst, Differential which,
                                   DetachedRule detached) {
  std::map<CanonicalGraph, std::size_t> row_of;
  for (std::size_t i = 0; i < dst.size(); ++i) row_of.emplace(dst[i], i);
  SparseMatrix out(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    Chain image = which == Differential::projective ? d_proj(to_chain({src[j], 1}))
                                                    : d_kontsevich(to_chain({src[j], 1}));
    for (const auto& [g, c] : image) {
      if (detached == DetachedRule::kill && has_detached_internals(g)) continue;
      auto it = row_of.find(g);
      if (it == row_of.end()) {
        throw CoverageError("image of " + describe(src[j]) + " contains " + describe(g) +
                            " (degree " + std::to_string(g.degree()) + ", m=" +
                            std::to_string(g.internal_count) +
                            "), which is missing from the target basis");
      }
      out.add(it->second, j, c);
    }
  }
  return out;
}

std::map<int, std::size_t> homology(const GradedBasis& basis, Differential which) {
  std::map<int, std::size_t> out;
  if (basis.max_degree() < basis.min_degree()) return out;
  std::map<int, std::size_t> rank_from;  // rank of d : C^d -> C^{d+1}
  std::map<int, std::size_t> dims;
  for (int d = basis.min_degree(); d <= basis.max_degree(); ++d) {
    auto src = basis.slice(d);
    dims[d] = src.size();
    rank_from[d] = src.empty() ? 0 : rank(assemble_differential(src, basis.slice(d + 1), which,
                                                                  basis.detached_rule()));
  }
  for (int d = basis.min_degree(); d <= basis.max_degree(); ++d) {
    std::size_t in = rank_from.count(d - 1) ? rank_from[d - 1] : 0;
    out[d] = dims[d] - rank_from[d] - in;
  }
  return out;
}

}  // namespace pgc
