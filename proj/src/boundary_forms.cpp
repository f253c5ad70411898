#include "pgc/boundary_forms.hpp"

#include <set>

#include "pgc/errors.hpp"

namespace pgc {

BoundaryElement alpha(Label p, Label q, const Rational& c) { return alpha_monomial({{p, q}}, c); }

BoundaryElement impose_boundary(const BoundaryElement& x, const std::vector<Label>& vertices,
                                Label u, Label v) {
  std::set<Label> declared(vertices.begin(), vertices.end());
  if (declared.size() < 3) throw ArgumentError("the stratum needs at least three vertices");
  if (u == v || !declared.count(u) || !declared.count(v)) {
    throw ArgumentError("u and v must be distinct declared vertices");
  }
  Label w0 = 0;
  for (Label l : declared) {
    if (l != u && l != v) {
      w0 = l;
      break;
    }
  }
  // Degree-one image of each generator.
  auto image = [&](Label p, Label q) {
    if (!declared.count(p) || !declared.count(q)) {
      throw ArgumentError("generator uses an undeclared vertex");
    }
    Label other = p == u ? q : (q == u ? p : u);
    bool touches_u = p == u || q == u;
    if (!touches_u || other == v || other == w0) return alpha(p, q);
    BoundaryElement e = alpha(u, w0);
    e += alpha(v, w0, -1);
    e += alpha(v, other);
    return e;
  };
  BoundaryElement out;
  for (const auto& [word, c] : x) {
    BoundaryElement term = alpha_monomial({}, c);
    for (const auto& [p, q] : word) term = alpha_multiply(term, image(p, q));
    out += term;
  }
  return out;
}

bool check_key_relation(const std::vector<Label>& vertices, Label u, Label v, Label w, Label x) {
  std::set<Label> four{u, v, w, x};
  if (four.size() != 4) throw ArgumentError("key relation needs four distinct vertices");
  BoundaryElement lhs = alpha_multiply(alpha(u, w), alpha(u, x));
  BoundaryElement left = alpha(v, w) - alpha(v, x);
  BoundaryElement right = alpha(u, w) + alpha(u, x);
  BoundaryElement rhs = alpha_multiply(left, right);
  rhs *= Rational(1, 2);
  return impose_boundary(lhs - rhs, vertices, u, v).empty();
}

BoundaryElement boundary_expansion_defect(int k) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  const Label u = k + 1, v = k + 2;
  std::vector<Label> vertices;
  for (Label l = 1; l <= k + 2; ++l) vertices.push_back(l);

  BoundaryElement lhs = alpha_monomial({});
  for (Label i = 1; i <= k; ++i) lhs = alpha_multiply(lhs, alpha(i, v));

  BoundaryElement alternating;
  for (Label i = 1; i <= k; ++i) {
    AlphaWord word;
    for (Label j = 1; j <= k; ++j) {
      if (j != i) word.emplace_back(j, u);
    }
    alternating += alpha_monomial(word, (k + i) % 2 == 0 ? 1 : -1);
  }
  BoundaryElement weighted = alpha(1, v);
  for (Label j = 2; j <= k; ++j) {
    Rational w = 1;
    mpz_ui_pow_ui(w.get_num_mpz_t(), 2, static_cast<unsigned long>(j - 2));
    weighted += alpha(j, v, w);
  }
  BoundaryElement rhs = alpha_multiply(alternating, weighted);
  Rational scale = 1;
  mpz_ui_pow_ui(scale.get_den_mpz_t(), 2, static_cast<unsigned long>(k - 1));
  rhs *= scale;
  return impose_boundary(lhs - rhs, vertices, u, v);
}

bool check_boundary_expansion(int k) { return boundary_expansion_defect(k).empty(); }

}  // namespace pgc
