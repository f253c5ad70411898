#pragma once

// Co-composition of projective graphs along a partition I | J of the
// external labels, and its counterpart on cohomology classes.

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pgc/arnold.hpp"
#include "pgc/complexes.hpp"

namespace pgc {

/// Side assignment for the internal vertices and edges of a canonical graph.
/// true = left. Externals follow the partition.
struct Splitting {
  std::vector<char> internal_left;  // indexed by internal index
  std::vector<char> edge_left;      // indexed by position in the sorted edge list
  auto operator<=>(const Splitting&) const = default;
};

/// Auxiliary externals added to the left (x) and right (y) sides.
struct AuxLabels {
  Label x = 0;
  Label y = 0;
};

/// x = max label + 1, y = max label + 2.
AuxLabels default_aux(const std::vector<Label>& labels);

using TensorKey = std::pair<CanonicalGraph, CanonicalGraph>;
using TensorChain = LinComb<TensorKey>;

/// Throws ArgumentError unless I and J partition the externals of g.
std::vector<Splitting> enumerate_splittings(const CanonicalGraph& g, const std::vector<Label>& I,
                                            const std::vector<Label>& J);

/// Both sides are reduced to based form.
TensorChain cocompose(const Chain& x, const std::vector<Label>& I, const std::vector<Label>& J,
                      std::optional<AuxLabels> aux = std::nullopt);

/// (d (x) id + id (x) d) with the Koszul sign on the second summand.
TensorChain tensor_differential(const TensorChain& t);

/// Exchange factors with sign (-1)^{|a||b|}.
TensorChain tensor_swap(const TensorChain& t);

/// Relabel each side.
TensorChain tensor_relabel(const TensorChain& t, const std::map<Label, Label>& left,
                           const std::map<Label, Label>& right);

/// Tensor of cohomology classes with fixed label sets per side.
class CohTensor {
 public:
  CohTensor(std::vector<Label> left, std::vector<Label> right);
  static CohTensor outer(const CohClass& a, const CohClass& b);

  const std::vector<Label>& left_labels() const { return left_; }
  const std::vector<Label>& right_labels() const { return right_; }
  const LinComb<std::pair<OmegaEtaMonomial, OmegaEtaMonomial>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  CohTensor& operator+=(const CohTensor& other);
  CohTensor& operator*=(const Rational& c);
  bool operator==(const CohTensor& other) const = default;
  /// Product with the Koszul sign (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.
  friend CohTensor operator*(const CohTensor& a, const CohTensor& b);

 private:
  std::vector<Label> left_;
  std::vector<Label> right_;
  LinComb<std::pair<OmegaEtaMonomial, OmegaEtaMonomial>> terms_;
};

/// Algebra map determined by
///   a_uv -> a_uv (x) 1 (both in I), 1 (x) a_uv (both in J),
///   a_ux (x) 1 + 1 (x) a_yv (u in I, v in J).
CohTensor cocompose_cohomology(const CohClass& c, const std::vector<Label>& I,
                               const std::vector<Label>& J,
                               std::optional<AuxLabels> aux = std::nullopt);

/// q (x) q on a tensor of graphs.
CohTensor quotient_q(const TensorChain& t, const std::vector<Label>& left_labels,
                     const std::vector<Label>& right_labels);

nlohmann::json tensor_to_json(const TensorChain& t);
TensorChain tensor_from_json(const nlohmann::json& j);

}  // namespace pgc
