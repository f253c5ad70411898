#pragma once

// Graph complexes: Kontsevich graphs (affine orientation), the affine
// complex K tensor Lambda(eta), and projective graphs modulo the pinwheel
// relation, represented through based normal forms.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pgc/exactlin.hpp"
#include "pgc/graph.hpp"

namespace pgc {

/// Linear combination of canonical graphs. Signs from canonicalization are
/// folded into the coefficients, so every key carries the canonical word.
using Chain = LinComb<CanonicalGraph>;

/// A basis element gamma (x) eta_{i_1} ... eta_{i_k} of the affine complex.
struct AffineElement {
  CanonicalGraph graph;   // affine mode
  std::vector<Label> eta;  // strictly increasing external labels

  int degree() const { return graph.degree() + static_cast<int>(eta.size()); }
  auto operator<=>(const AffineElement&) const = default;
};

using AffineChain = LinComb<AffineElement>;

enum class BasisKind {
  projective_based,  // admissible projective graphs, every internal vertex joined to u0
  projective_all,    // admissible projective graphs without the based condition
  kontsevich,        // Kontsevich-admissible affine graphs
};

void add_signed(Chain& c, const SignedCanonicalGraph& g, const Rational& scale = 1);
Chain to_chain(const SignedCanonicalGraph& g);

/// All admissible canonical graphs with nonzero sign, sorted.
std::vector<CanonicalGraph> enumerate_basis(const std::vector<Label>& externals, int m,
                                            int edge_count, BasisKind kind);

/// Largest edge count worth enumerating for given n and m.
int max_edge_count(int n, int m, BasisKind kind);

/// Every internal vertex adjacent to the minimal external (vertex id 0).
bool is_based(const CanonicalGraph& g);
int filtration_level(const CanonicalGraph& g);

/// True when removing the basepoint leaves a component with internal
/// vertices and no external vertex. Under psi these graphs correspond to
/// affine graphs with a component free of externals.
bool has_detached_internals(const CanonicalGraph& g);

/// Whether graphs with detached internals count as zero. `keep` applies
/// only the valence and component rules; `kill` adds the relation carried
/// over from the affine side.
enum class DetachedRule { keep, kill };

/// One pinwheel rewrite at internal vertex `vertex`; identity when that
/// vertex already touches u0. Terms are returned unreduced.
Chain apply_p(const CanonicalGraph& g, VertexId vertex);

enum class POrder { ascending, descending };

/// Normal form of x in the based basis. Inadmissible input keys are dropped.
Chain reduce_to_based(const Chain& x, POrder order = POrder::ascending);

/// Sum over edges at `vertex` of g with that edge deleted (unreduced).
Chain pinwheel_vector(const CanonicalGraph& g, VertexId vertex);

/// Adds external label `basepoint` (must be smaller than every label of x).
Chain psi(const AffineElement& x, Label basepoint = 0);
Chain psi(const AffineChain& x, Label basepoint = 0);
/// Throws ContractViolation on a key that is not based.
AffineChain psi_inverse(const Chain& b);

enum class HeadRule { larger_id, smaller_id };

/// Kontsevich differential on affine-mode keys.
Chain d_kontsevich(const Chain& x);
/// d_K (x) id on the affine complex.
AffineChain d_aff(const AffineChain& x);
/// Projective differential followed by reduction to based form.
Chain d_proj(const Chain& x, HeadRule rule = HeadRule::larger_id);
/// Unreduced sum of delete-then-contract terms for a single graph.
Chain d_proj_raw(const CanonicalGraph& g, HeadRule rule = HeadRule::larger_id);

/// Gluing product along externals; reduced when projective.
Chain glue_product(const Chain& x, const Chain& y);

Chain relabel(const Chain& x, const std::map<Label, Label>& sigma);

// ---------------------------------------------------------------------------
// Graded bases and truncated complexes

/// Graphs of one complex grouped by (degree, internal count).
class GradedBasis {
 public:
  using Loader = std::function<std::vector<CanonicalGraph>(int degree, int m)>;

  /// Enumerates directly, or through `loader` when one is supplied.
  GradedBasis(std::vector<Label> externals, BasisKind kind, int max_internal,
              const Loader& loader = {});
  /// Weight-bounded variant: all m with |E| - 2m == weight.
  static GradedBasis for_weight(std::vector<Label> externals, BasisKind kind, int weight,
                                DetachedRule detached = DetachedRule::keep);

  const std::vector<Label>& externals() const { return externals_; }
  BasisKind kind() const { return kind_; }
  int max_internal() const { return max_internal_; }

  const std::vector<CanonicalGraph>& block(int degree, int m) const;
  /// All graphs of one degree, ordered by m then by graph.
  std::vector<CanonicalGraph> slice(int degree) const;
  DetachedRule detached_rule() const { return detached_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }
  std::size_t total_size() const;

 private:
  GradedBasis() = default;
  void add_block(int degree, int m, std::vector<CanonicalGraph> graphs);

  std::vector<Label> externals_;
  BasisKind kind_ = BasisKind::projective_based;
  int max_internal_ = 0;
  int min_degree_ = 0;
  int max_degree_ = -1;
  DetachedRule detached_ = DetachedRule::keep;
  std::map<std::pair<int, int>, std::vector<CanonicalGraph>> blocks_;
};

enum class Differential { projective, kontsevich };

/// Matrix of the differential from `src` to `dst` (rows index dst). Throws
/// CoverageError if an image term is missing from `dst`. With
/// DetachedRule::kill, image terms with detached internals are dropped.
SparseMatrix assemble_differential(const std::vector<CanonicalGraph>& src,
                                   const std::vector<CanonicalGraph>& dst, Differential which,
                                   DetachedRule detached = DetachedRule::keep);

/// dim H^d for every degree of the complex spanned by `basis`.
std::map<int, std::size_t> homology(const GradedBasis& basis, Differential which);

}  // namespace pgc
