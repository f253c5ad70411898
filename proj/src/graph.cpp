#include "pgc/graph.hpp"

#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "pgc/errors.hpp"

namespace pgc {

namespace {

constexpr int kMaxVertices = 32;

std::string vertex_name(const std::vector<Label>& externals, VertexId v) {
  int n = static_cast<int>(externals.size());
  if (v < n) return std::to_string(externals[static_cast<std::size_t>(v)]);
  return "i" + std::to_string(v - n);
}

}  // namespace

// ---------------------------------------------------------------------------
// OrientedGraph

OrientedGraph::OrientedGraph(std::vector<Label> externals, int internal_count, Mode mode,
                             std::vector<Letter> word)
    : externals_(std::move(externals)),
      internal_count_(internal_count),
      mode_(mode),
      word_(std::move(word)) {
  validate();
}

OrientedGraph OrientedGraph::from_edges(std::vector<Label> externals, int internal_count,
                                        Mode mode, const std::vector<Edge>& edges) {
  int n = static_cast<int>(externals.size());
  std::vector<Letter> word;
  if (mode == Mode::projective) {
    for (int k = 0; k < internal_count; ++k) word.push_back(Letter::vertex(n + k));
  }
  for (const Edge& e : edges) {
    if (e.a == e.b) throw StructuralError("loop at vertex " + vertex_name(externals, e.a));
    word.push_back(Letter::edge(e));
  }
  return OrientedGraph(std::move(externals), internal_count, mode, std::move(word));
}

void OrientedGraph::validate() const {
  if (!std::is_sorted(externals_.begin(), externals_.end()) ||
      std::adjacent_find(externals_.begin(), externals_.end()) != externals_.end()) {
    throw StructuralError("external labels must be strictly increasing");
  }
  if (internal_count_ < 0) throw StructuralError("negative internal vertex count");
  if (vertex_count() > kMaxVertices) throw StructuralError("too many vertices");
  std::set<Edge> seen_edges;
  std::vector<int> seen_vertices(static_cast<std::size_t>(internal_count_), 0);
  for (const Letter& x : word_) {
    if (x.a < 0 || x.b >= vertex_count() || x.a > x.b) {
      throw StructuralError("orientation letter out of range");
    }
    if (x.is_vertex()) {
      if (mode_ == Mode::affine) {
        throw StructuralError("affine orientation words contain only edges");
      }
      if (!is_internal(x.a)) {
        throw StructuralError("vertex letter " + vertex_name(externals_, x.a) +
                              " is not internal");
      }
      if (++seen_vertices[static_cast<std::size_t>(x.a - n())] > 1) {
        throw StructuralError("repeated vertex letter");
      }
    } else if (!seen_edges.insert(x.as_edge()).second) {
      throw StructuralError("double edge " + vertex_name(externals_, x.a) + "-" +
                            vertex_name(externals_, x.b));
    }
  }
  if (mode_ == Mode::projective) {
    for (int count : seen_vertices) {
      if (count != 1) throw StructuralError("projective word must contain every internal vertex");
    }
  }
}

VertexId OrientedGraph::external_id(Label label) const {
  auto it = std::lower_bound(externals_.begin(), externals_.end(), label);
  if (it == externals_.end() || *it != label) {
    throw ArgumentError("no external vertex labelled " + std::to_string(label));
  }
  return static_cast<VertexId>(it - externals_.begin());
}

VertexId OrientedGraph::id(VertexRef r) const {
  if (!r.is_internal()) return external_id(r.value);
  if (r.value < 0 || r.value >= internal_count_) {
    throw ArgumentError("no internal vertex i" + std::to_string(r.value));
  }
  return n() + r.value;
}

VertexRef OrientedGraph::ref(VertexId v) const {
  if (v < 0 || v >= vertex_count()) throw ArgumentError("vertex id out of range");
  if (is_internal(v)) return VertexRef::internal(v - n());
  return VertexRef::external(externals_[static_cast<std::size_t>(v)]);
}

std::vector<Edge> OrientedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(word_.size());
  for (const Letter& x : word_) {
    if (!x.is_vertex()) out.push_back(x.as_edge());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t OrientedGraph::edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(word_.begin(), word_.end(), [](const Letter& x) { return !x.is_vertex(); }));
}

bool OrientedGraph::has_edge(Edge e) const {
  return std::find(word_.begin(), word_.end(), Letter::edge(e)) != word_.end();
}

std::vector<Edge> OrientedGraph::incident(VertexId v) const {
  std::vector<Edge> out;
  for (const Letter& x : word_) {
    if (!x.is_vertex() && x.as_edge().touches(v)) out.push_back(x.as_edge());
  }
  return out;
}

int OrientedGraph::valence(VertexId v) const {
  int count = 0;
  for (const Letter& x : word_) {
    if (!x.is_vertex() && (x.a == v || x.b == v)) ++count;
  }
  return count;
}

std::uint32_t OrientedGraph::neighbour_mask(VertexId v) const {
  std::uint32_t mask = 0;
  for (const Letter& x : word_) {
    if (x.is_vertex()) continue;
    if (x.a == v) mask |= 1u << x.b;
    if (x.b == v) mask |= 1u << x.a;
  }
  return mask;
}

int OrientedGraph::remove_letter(Letter x) {
  auto it = std::find(word_.begin(), word_.end(), x);
  if (it == word_.end()) throw ArgumentError("letter not present in orientation word");
  auto pos = it - word_.begin();
  word_.erase(it);
  return pos % 2 == 0 ? 1 : -1;
}

void OrientedGraph::prepend(Letter x) { word_.insert(word_.begin(), x); }

int OrientedGraph::delete_edge(Edge e) {
  if (!has_edge(e)) throw ArgumentError("edge not present");
  return remove_letter(Letter::edge(e));
}

void OrientedGraph::drop_internal(VertexId v) {
  auto shift = [v](VertexId x) { return x > v ? x - 1 : x; };
  for (Letter& x : word_) {
    x.a = shift(x.a);
    x.b = shift(x.b);
  }
  --internal_count_;
}

int OrientedGraph::contract_edge(Edge e, VertexId head) {
  if (!has_edge(e)) throw ArgumentError("edge not present");
  if (!e.touches(head)) throw ArgumentError("head is not an endpoint of the edge");
  if (!is_internal(head)) throw ArgumentError("head of a contracted edge must be internal");
  VertexId tail = e.other(head);
  std::uint32_t common = neighbour_mask(head) & neighbour_mask(tail);
  if (common != 0) return 0;

  int sign = remove_letter(Letter::edge(e));
  if (mode_ == Mode::projective) sign *= remove_letter(Letter::vertex(head));
  for (Letter& x : word_) {
    if (x.is_vertex()) continue;
    if (x.a == head || x.b == head) x = Letter::edge(Edge(x.as_edge().other(head), tail));
  }
  drop_internal(head);
  return sign;
}

void OrientedGraph::relabel_externals(const std::map<Label, Label>& sigma) {
  if (sigma.size() != externals_.size()) throw ArgumentError("relabelling is not a bijection");
  std::vector<Label> images;
  for (Label l : externals_) {
    auto it = sigma.find(l);
    if (it == sigma.end()) {
      throw ArgumentError("relabelling does not cover label " + std::to_string(l));
    }
    images.push_back(it->second);
  }
  std::vector<Label> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ArgumentError("relabelling is not injective");
  }
  std::vector<VertexId> pos(externals_.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    pos[i] = static_cast<VertexId>(std::lower_bound(sorted.begin(), sorted.end(), images[i]) -
                                   sorted.begin());
  }
  auto remap = [&](VertexId v) { return v < n() ? pos[static_cast<std::size_t>(v)] : v; };
  for (Letter& x : word_) {
    if (x.is_vertex()) continue;
    x = Letter::edge(Edge(remap(x.a), remap(x.b)));
  }
  externals_ = std::move(sorted);
}

// ---------------------------------------------------------------------------
// CanonicalGraph

int CanonicalGraph::degree() const {
  int e = static_cast<int>(edges.size());
  return mode == Mode::projective ? e - 3 * internal_count : e - 2 * internal_count;
}

int CanonicalGraph::weight() const { return static_cast<int>(edges.size()) - 2 * internal_count; }

OrientedGraph CanonicalGraph::oriented() const {
  return OrientedGraph::from_edges(externals, internal_count, mode, edges);
}

int permutation_sign(const std::vector<int>& perm) {
  // Cycle decomposition: a k-cycle contributes k - 1 transpositions.
  std::vector<char> seen(perm.size(), 0);
  int transpositions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t j = i;
    int len = 0;
    while (!seen[j]) {
      seen[j] = 1;
      j = static_cast<std::size_t>(perm[j]);
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

namespace {

struct Candidate {
  std::vector<Edge> edges;
  int parity = 1;
};

// Relabel with new_id[old] and return sorted edges plus the parity of the
// permutation taking the relabelled word to the canonical word.
Candidate relabelled(const OrientedGraph& g, const std::vector<VertexId>& new_id) {
  Candidate c;
  const auto& word = g.word();
  std::vector<Letter> mapped;
  mapped.reserve(word.size());
  for (const Letter& x : word) {
    if (x.is_vertex()) {
      mapped.push_back(Letter::vertex(new_id[static_cast<std::size_t>(x.a)]));
    } else {
      Edge e(new_id[static_cast<std::size_t>(x.a)], new_id[static_cast<std::size_t>(x.b)]);
      mapped.push_back(Letter::edge(e));
      c.edges.push_back(e);
    }
  }
  std::sort(c.edges.begin(), c.edges.end());
  int n = g.n();
  int vertex_letters = g.mode() == Mode::projective ? g.internal_count() : 0;
  std::vector<int> target(mapped.size());
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    const Letter& x = mapped[i];
    if (x.is_vertex()) {
      target[i] = x.a - n;
    } else {
      auto it = std::lower_bound(c.edges.begin(), c.edges.end(), x.as_edge());
      target[i] = vertex_letters + static_cast<int>(it - c.edges.begin());
    }
  }
  c.parity = permutation_sign(target);
  return c;
}

}  // namespace

SignedCanonicalGraph canonicalize(const OrientedGraph& g) {
  const int n = g.n();
  const int m = g.internal_count();

  // Isomorphism-invariant signature per internal vertex; labellings are only
  // tried in signature order, and every automorphism preserves signatures.
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) nbr[static_cast<std::size_t>(v)] = g.neighbour_mask(v);
  const std::uint32_t ext_mask = n >= 32 ? ~0u : ((1u << n) - 1u);
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::uint32_t mask = nbr[static_cast<std::size_t>(n + k)];
    auto& s = sig[static_cast<std::size_t>(k)];
    s.push_back(std::popcount(mask));
    s.push_back(static_cast<int>(mask & ext_mask));
    std::vector<int> internal_nbr_degrees;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << (n + j))) {
        internal_nbr_degrees.push_back(std::popcount(nbr[static_cast<std::size_t>(n + j)]));
      }
    }
    std::sort(internal_nbr_degrees.begin(), internal_nbr_degrees.end());
    s.insert(s.end(), internal_nbr_degrees.begin(), internal_nbr_degrees.end());
  }
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)];
  });
  std::vector<std::pair<int, int>> cells;  // [begin, end) ranges of equal signature
  for (int i = 0; i < m;) {
    int j = i + 1;
    while (j < m && sig[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] ==
                        sig[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]) {
      ++j;
    }
    cells.emplace_back(i, j);
    i = j;
  }

  std::optional<Candidate> best;
  bool odd_automorphism = false;
  std::vector<VertexId> new_id(static_cast<std::size_t>(g.vertex_count()));
  std::iota(new_id.begin(), new_id.begin() + n, 0);

  auto visit = [&]() {
    for (int pos = 0; pos < m; ++pos) {
      new_id[static_cast<std::size_t>(n + order[static_cast<std::size_t>(pos)])] = n + pos;
    }
    Candidate c = relabelled(g, new_id);
    if (!best || c.edges < best->edges) {
      best = std::move(c);
      odd_automorphism = false;
    } else if (c.edges == best->edges && c.parity != best->parity) {
      odd_automorphism = true;
    }
  };

  // Iterate the product of the permutation groups of all cells.
  auto recurse = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      visit();
      return;
    }
    auto first = order.begin() + cells[cell].first;
    auto last = order.begin() + cells[cell].second;
    std::sort(first, last);
    do {
      self(self, cell + 1);
    } while (std::next_permutation(first, last));
  };
  recurse(recurse, 0);

  SignedCanonicalGraph out;
  out.graph.externals = g.externals();
  out.graph.internal_count = m;
  out.graph.mode = g.mode();
  out.graph.edges = std::move(best->edges);
  out.sign = odd_automorphism ? 0 : best->parity;
  return out;
}

// ---------------------------------------------------------------------------
// Operations on signed canonical graphs

namespace {

SignedCanonicalGraph times(SignedCanonicalGraph g, int sign) {
  g.sign *= sign;
  return g;
}

}  // namespace

SignedCanonicalGraph delete_edge(const SignedCanonicalGraph& g, Edge e) {
  OrientedGraph og = g.graph.oriented();
  int s = og.delete_edge(e);
  return times(canonicalize(og), s * g.sign);
}

std::optional<SignedCanonicalGraph> contract_edge(const SignedCanonicalGraph& g, Edge e,
                                                  VertexId head) {
  OrientedGraph og = g.graph.oriented();
  if (!og.has_edge(e)) throw ArgumentError("edge not present");
  int s = og.contract_edge(e, head);
  if (s == 0) return std::nullopt;
  return times(canonicalize(og), s * g.sign);
}

std::optional<SignedCanonicalGraph> oslash(const SignedCanonicalGraph& g, Edge e, VertexId head,
                                           Edge f) {
  if (e == f) throw ArgumentError("oslash needs two distinct edges");
  if (!f.touches(head)) throw ArgumentError("f must be incident at the head of e");
  OrientedGraph og = g.graph.oriented();
  if (!og.has_edge(e) || !og.has_edge(f)) throw ArgumentError("edge not present");
  if (!e.touches(head) || !og.is_internal(head)) {
    throw ArgumentError("head must be an internal endpoint of e");
  }
  int s = og.delete_edge(f);
  int t = og.contract_edge(e, head);
  if (t == 0) return std::nullopt;
  return times(canonicalize(og), s * t * g.sign);
}

SignedCanonicalGraph relabel_external(const SignedCanonicalGraph& g,
                                      const std::map<Label, Label>& sigma) {
  OrientedGraph og = g.graph.oriented();
  og.relabel_externals(sigma);
  return times(canonicalize(og), g.sign);
}

// ---------------------------------------------------------------------------
// Admissibility

namespace {

bool admissible(int n, int vertex_count, const std::vector<Edge>& edges, Admissibility rule) {
  std::vector<int> valence(static_cast<std::size_t>(vertex_count), 0);
  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : edges) {
    ++valence[static_cast<std::size_t>(e.a)];
    ++valence[static_cast<std::size_t>(e.b)];
    parent[static_cast<std::size_t>(find(e.a))] = find(e.b);
  }
  const int min_valence = rule == Admissibility::projective ? 4 : 3;
  for (int v = n; v < vertex_count; ++v) {
    if (valence[static_cast<std::size_t>(v)] < min_valence) return false;
  }
  std::vector<int> externals_in(static_cast<std::size_t>(vertex_count), 0);
  std::vector<int> internals_in(static_cast<std::size_t>(vertex_count), 0);
  for (int v = 0; v < vertex_count; ++v) {
    int root = find(v);
    if (v < n) {
      ++externals_in[static_cast<std::size_t>(root)];
    } else {
      ++internals_in[static_cast<std::size_t>(root)];
    }
  }
  for (int r = 0; r < vertex_count; ++r) {
    if (internals_in[static_cast<std::size_t>(r)] == 0) continue;
    int ext = externals_in[static_cast<std::size_t>(r)];
    if (rule == Admissibility::projective && ext <= 1) return false;
    if (rule == Admissibility::kontsevich && ext == 0) return false;
  }
  return true;
}

}  // namespace

bool is_admissible(const OrientedGraph& g, Admissibility rule) {
  return admissible(g.n(), g.vertex_count(), g.edges(), rule);
}

bool is_admissible(const CanonicalGraph& g, Admissibility rule) {
  return admissible(g.n(), g.n() + g.internal_count, g.edges, rule);
}

std::string describe(const CanonicalGraph& g) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < g.externals.size(); ++i) out << (i ? " " : "") << g.externals[i];
  out << "|m=" << g.internal_count << "] {";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    out << (i ? ", " : "") << vertex_name(g.externals, g.edges[i].a) << '-'
        << vertex_name(g.externals, g.edges[i].b);
  }
  out << '}';
  return out.str();
}

}  // namespace pgc
