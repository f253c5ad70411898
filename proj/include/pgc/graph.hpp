#pragma once

// Oriented graphs with labelled external vertices and unlabelled internal
// vertices, their signed canonical forms, and the edge operations
// (deletion, contraction, delete-then-contract) that build the differentials.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pgc {

/// Affine orientations order E; projective orientations order V_int + E.
enum class Mode { affine, projective };

/// Which family of vanishing relations a graph is tested against.
enum class Admissibility { projective, kontsevich };

using Label = int;
/// Dense vertex numbering inside a graph: externals occupy [0, n) in label
/// order, internals occupy [n, n + m) in index order.
using VertexId = int;

struct VertexRef {
  enum class Kind { external, internal };
  Kind kind = Kind::external;
  int value = 0;  // external label or internal index

  static VertexRef external(Label label) { return {Kind::external, label}; }
  static VertexRef internal(int index) { return {Kind::internal, index}; }
  bool is_internal() const { return kind == Kind::internal; }
  auto operator<=>(const VertexRef&) const = default;
};

struct Edge {
  VertexId a = 0;
  VertexId b = 0;

  Edge() = default;
  Edge(VertexId x, VertexId y) : a(std::min(x, y)), b(std::max(x, y)) {}

  bool touches(VertexId v) const { return a == v || b == v; }
  VertexId other(VertexId v) const { return a == v ? b : a; }
  auto operator<=>(const Edge&) const = default;
};

/// A generator of the orientation line: an internal vertex (a == b) or an
/// edge (a < b).
struct Letter {
  VertexId a = 0;
  VertexId b = 0;

  static Letter vertex(VertexId v) { return {v, v}; }
  static Letter edge(Edge e) { return {e.a, e.b}; }
  bool is_vertex() const { return a == b; }
  Edge as_edge() const { return Edge(a, b); }
  auto operator<=>(const Letter&) const = default;
};

class OrientedGraph {
 public:
  OrientedGraph() = default;
  /// Validates: sorted distinct externals, no loops, no repeated edge, and a
  /// word holding every required generator exactly once.
  OrientedGraph(std::vector<Label> externals, int internal_count, Mode mode,
                std::vector<Letter> word);

  /// Word = edges in the given order; projective mode puts the internal
  /// vertex letters first, in index order.
  static OrientedGraph from_edges(std::vector<Label> externals, int internal_count, Mode mode,
                                  const std::vector<Edge>& edges);

  const std::vector<Label>& externals() const { return externals_; }
  int n() const { return static_cast<int>(externals_.size()); }
  int internal_count() const { return internal_count_; }
  int vertex_count() const { return n() + internal_count_; }
  Mode mode() const { return mode_; }
  const std::vector<Letter>& word() const { return word_; }

  bool is_internal(VertexId v) const { return v >= n(); }
  VertexId id(VertexRef ref) const;
  VertexRef ref(VertexId v) const;
  VertexId internal_id(int index) const { return n() + index; }
  VertexId external_id(Label label) const;

  std::vector<Edge> edges() const;  // sorted
  std::size_t edge_count() const;
  bool has_edge(Edge e) const;
  std::vector<Edge> incident(VertexId v) const;  // in word order
  int valence(VertexId v) const;
  /// Bitmask of neighbours of v (vertex ids < 32).
  std::uint32_t neighbour_mask(VertexId v) const;

  // Orientation-tracking mutations. Each returns the sign acquired by the
  // orientation ray.

  /// iota_x: x ^ r -> r. Throws ArgumentError if the letter is absent.
  int remove_letter(Letter x);
  /// r -> x ^ r.
  void prepend(Letter x);
  /// Delete e (iota_e).
  int delete_edge(Edge e);
  /// Contract e onto its tail, removing `head` (must be an internal endpoint).
  /// Returns 0 and leaves the graph untouched when the endpoints share a
  /// neighbour (a double edge would form).
  int contract_edge(Edge e, VertexId head);
  /// Rename external labels through sigma (a bijection onto a new label set).
  /// The word is kept letter-for-letter.
  void relabel_externals(const std::map<Label, Label>& sigma);

 private:
  struct Unchecked {};
  OrientedGraph(Unchecked, std::vector<Label> externals, int internal_count, Mode mode,
                std::vector<Letter> word)
      : externals_(std::move(externals)),
        internal_count_(internal_count),
        mode_(mode),
        word_(std::move(word)) {}
  void validate() const;
  void drop_internal(VertexId v);

  std::vector<Label> externals_;
  int internal_count_ = 0;
  Mode mode_ = Mode::projective;
  std::vector<Letter> word_;
};

/// Canonical representative of an isomorphism class (isomorphisms fix the
/// external labels and permute internal vertices). Its orientation is the
/// canonical word: internal vertices by index, then edges in sorted order.
struct CanonicalGraph {
  std::vector<Label> externals;
  int internal_count = 0;
  Mode mode = Mode::projective;
  std::vector<Edge> edges;  // sorted

  int n() const { return static_cast<int>(externals.size()); }
  /// |E| - 3m (projective) or |E| - 2m (affine).
  int degree() const;
  /// |E| - 2m, preserved by both differentials.
  int weight() const;
  OrientedGraph oriented() const;

  auto operator<=>(const CanonicalGraph&) const = default;
};

/// sign is +1, -1, or 0 (the graph has an odd automorphism and vanishes).
struct SignedCanonicalGraph {
  CanonicalGraph graph;
  int sign = 1;

  bool is_zero() const { return sign == 0; }
  bool operator==(const SignedCanonicalGraph&) const = default;
};

/// Sign of a permutation given by its image array.
int permutation_sign(const std::vector<int>& perm);

SignedCanonicalGraph canonicalize(const OrientedGraph& g);

SignedCanonicalGraph delete_edge(const SignedCanonicalGraph& g, Edge e);
std::optional<SignedCanonicalGraph> contract_edge(const SignedCanonicalGraph& g, Edge e,
                                                  VertexId head);
/// (g \ f) / e with e contracted onto its tail; nullopt when undefined.
std::optional<SignedCanonicalGraph> oslash(const SignedCanonicalGraph& g, Edge e, VertexId head,
                                           Edge f);
SignedCanonicalGraph relabel_external(const SignedCanonicalGraph& g,
                                      const std::map<Label, Label>& sigma);

bool is_admissible(const OrientedGraph& g, Admissibility rule);
bool is_admissible(const CanonicalGraph& g, Admissibility rule);

/// Short human-readable form, e.g. "[0 1 2|m=1] {0-i0, 1-i0}".
std::string describe(const CanonicalGraph& g);

}  // namespace pgc
