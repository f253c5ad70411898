#pragma once

// Cohomology of the framed configuration spaces in two presentations:
// omega/eta generators with the Arnold relation, and alpha generators with
// the cyclic Arnold relation. The smallest label is the basepoint; omega and
// eta indices range over the remaining labels.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pgc/complexes.hpp"
#include "pgc/exactlin.hpp"

namespace pgc {

/// omega_{i_1 j_1} ... omega_{i_k j_k} eta_{l_1} ... eta_{l_r} with i_t < j_t,
/// j strictly increasing, and l strictly increasing.
struct OmegaEtaMonomial {
  std::vector<std::pair<Label, Label>> omega;
  std::vector<Label> eta;

  int degree() const { return static_cast<int>(omega.size() + eta.size()); }
  auto operator<=>(const OmegaEtaMonomial&) const = default;
};

struct Generator {
  enum class Kind { omega, eta };
  Kind kind = Kind::eta;
  Label i = 0;
  Label j = 0;  // unused for eta

  static Generator omega(Label a, Label b) { return {Kind::omega, std::min(a, b), std::max(a, b)}; }
  static Generator eta(Label a) { return {Kind::eta, a, a}; }
  auto operator<=>(const Generator&) const = default;
};

using GeneratorWord = std::vector<Generator>;

class CohClass {
 public:
  CohClass() = default;
  /// Zero class on the given labels (sorted, at least one).
  explicit CohClass(std::vector<Label> labels);
  static CohClass one(std::vector<Label> labels);

  const std::vector<Label>& labels() const { return labels_; }
  Label basepoint() const { return labels_.front(); }
  const LinComb<OmegaEtaMonomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c times the normal form of a generator word.
  void add_word(const GeneratorWord& word, const Rational& c);
  void add_monomial(const OmegaEtaMonomial& m, const Rational& c);

  CohClass& operator+=(const CohClass& other);
  CohClass& operator-=(const CohClass& other);
  CohClass& operator*=(const Rational& c);
  bool operator==(const CohClass& other) const = default;

 private:
  std::vector<Label> labels_;
  LinComb<OmegaEtaMonomial> terms_;
};

CohClass operator*(const CohClass& a, const CohClass& b);
CohClass operator+(CohClass a, const CohClass& b);
CohClass operator-(CohClass a, const CohClass& b);

/// Normal form of c * word. Throws ArgumentError on indices outside the
/// non-basepoint labels.
CohClass reduce_arnold(const std::vector<Label>& labels, const GeneratorWord& word,
                       const Rational& c = 1);

/// Word in alpha_{pq}; pairs are unordered.
using AlphaWord = std::vector<std::pair<Label, Label>>;

CohClass alpha_expand(const AlphaWord& word, const std::vector<Label>& labels);
CohClass alpha_class(Label p, Label q, const std::vector<Label>& labels);

/// Edge products of internal-vertex-free graphs; other keys map to zero.
CohClass quotient_q(const Chain& x, const std::vector<Label>& labels);

/// Normal-basis monomials on the labels, grouped by degree.
std::vector<std::vector<OmegaEtaMonomial>> normal_basis(const std::vector<Label>& labels,
                                                        bool with_eta = true);
/// dim H^d of the framed space on labels {0..n-1}, by counting normal monomials.
std::vector<std::size_t> betti_table(int n);
/// dim H^d of the configuration space of `points` points (omega part only).
std::vector<std::size_t> configuration_betti(int points);

/// Relabel through sigma (a bijection of the label set onto a new one).
/// Generators are rewritten in alpha form first, since a permutation that
/// moves the basepoint does not map omega/eta generators to generators.
CohClass act(const CohClass& x, const std::map<Label, Label>& sigma);

/// Degree-one alpha form of a generator:
/// omega_ij = (a_bi + a_bj - a_ij)/2 and eta_i = a_bi, b the basepoint.
std::vector<std::pair<std::pair<Label, Label>, Rational>> to_alpha(const Generator& g,
                                                                  Label basepoint);

// ---------------------------------------------------------------------------
// Free exterior algebra on alpha_{pq} (no Arnold relation)

/// Keys are strictly increasing lists of normalized pairs.
using AlphaPolynomial = LinComb<AlphaWord>;

/// Sign-normalizes a word in the free exterior algebra; zero on repeats.
AlphaPolynomial alpha_monomial(AlphaWord word, const Rational& c = 1);
AlphaPolynomial alpha_multiply(const AlphaPolynomial& a, const AlphaPolynomial& b);
/// Sum over the even permutations s of four labels of a_{s1 s2} a_{s2 s3}.
AlphaPolynomial cyclic_arnold_relation(Label i1, Label i2, Label i3, Label i4);

// ---------------------------------------------------------------------------

nlohmann::json coh_to_json(const CohClass& c);
CohClass coh_from_json(const nlohmann::json& j);

std::string describe(const OmegaEtaMonomial& m);
std::string describe(const CohClass& c);

}  // namespace pgc
