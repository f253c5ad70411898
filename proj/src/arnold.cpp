#include "pgc/arnold.hpp"

#include <algorithm>
#include <sstream>

#include "pgc/errors.hpp"

namespace pgc {

namespace {

void check_labels(const std::vector<Label>& labels) {
  if (labels.empty()) throw ArgumentError("a cohomology class needs at least one label");
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw ArgumentError("labels must be strictly increasing");
  }
}

bool has_label(const std::vector<Label>& labels, Label l) {
  return std::binary_search(labels.begin(), labels.end(), l);
}

void check_generator(const std::vector<Label>& labels, const Generator& g) {
  auto ok = [&](Label l) { return l != labels.front() && has_label(labels, l); };
  if (!ok(g.i) || (g.kind == Generator::Kind::omega && (!ok(g.j) || g.i == g.j))) {
    throw ArgumentError("generator index outside the non-basepoint labels");
  }
}

// Omega sorted by (second index, first index), etas after all omegas.
bool before(const Generator& a, const Generator& b) {
  if (a.kind != b.kind) return a.kind == Generator::Kind::omega;
  if (a.j != b.j) return a.j < b.j;
  return a.i < b.i;
}

// Sorts in place and returns the sign of the sorting permutation, or 0 when
// a generator repeats (odd classes square to zero).
int sort_with_sign(GeneratorWord& w) {
  int sign = 1;
  for (std::size_t k = 1; k < w.size(); ++k) {
    for (std::size_t p = k; p > 0 && before(w[p], w[p - 1]); --p) {
      std::swap(w[p], w[p - 1]);
      sign = -sign;
    }
  }
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k] == w[k - 1]) return 0;
  }
  return sign;
}

GeneratorWord to_word(const OmegaEtaMonomial& m) {
  GeneratorWord w;
  for (const auto& [i, j] : m.omega) w.push_back(Generator::omega(i, j));
  for (Label l : m.eta) w.push_back(Generator::eta(l));
  return w;
}

LinComb<OmegaEtaMonomial> normal_form(GeneratorWord word, const Rational& c) {
  LinComb<OmegaEtaMonomial> out;
  std::map<GeneratorWord, Rational> work;
  work[std::move(word)] = c;
  while (!work.empty()) {
    auto node = work.extract(std::prev(work.end()));
    GeneratorWord w = std::move(node.key());
    Rational coeff = std::move(node.mapped());
    if (coeff == 0) continue;
    int s = sort_with_sign(w);
    if (s == 0) continue;
    if (s < 0) coeff = -coeff;
    // Largest repeated second index among the omegas.
    std::size_t at = w.size();
    for (std::size_t k = 1; k < w.size(); ++k) {
      if (w[k].kind != Generator::Kind::omega) break;
      if (w[k].j == w[k - 1].j) at = k - 1;
    }
    if (at == w.size()) {
      OmegaEtaMonomial m;
      for (const Generator& g : w) {
        if (g.kind == Generator::Kind::omega) {
          m.omega.emplace_back(g.i, g.j);
        } else {
          m.eta.push_back(g.i);
        }
      }
      out.add(m, coeff);
      continue;
    }
    // The first two factors sharing that index have the smallest first
    // indices a < b; rewrite w_ac w_bc = w_ab w_bc - w_ab w_ac.
    while (at > 0 && w[at - 1].j == w[at].j) --at;
    Label a = w[at].i, b = w[at + 1].i, cc = w[at].j;
    GeneratorWord first = w, second = w;
    first[at] = Generator::omega(a, b);
    first[at + 1] = Generator::omega(b, cc);
    second[at] = Generator::omega(a, b);
    second[at + 1] = Generator::omega(a, cc);
    work[std::move(first)] += coeff;
    work[std::move(second)] -= coeff;
  }
  return out;
}

}  // namespace

CohClass::CohClass(std::vector<Label> labels) : labels_(std::move(labels)) {
  check_labels(labels_);
}

CohClass CohClass::one(std::vector<Label> labels) {
  CohClass c(std::move(labels));
  c.terms_.add(OmegaEtaMonomial{}, 1);
  return c;
}

void CohClass::add_word(const GeneratorWord& word, const Rational& c) {
  for (const Generator& g : word) check_generator(labels_, g);
  terms_.add(normal_form(word, c));
}

void CohClass::add_monomial(const OmegaEtaMonomial& m, const Rational& c) {
  add_word(to_word(m), c);
}

CohClass& CohClass::operator+=(const CohClass& other) {
  if (other.labels_ != labels_) throw ArgumentError("classes live on different label sets");
  terms_ += other.terms_;
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& other) {
  if (other.labels_ != labels_) throw ArgumentError("classes live on different label sets");
  terms_ -= other.terms_;
  return *this;
}

CohClass& CohClass::operator*=(const Rational& c) {
  terms_ *= c;
  return *this;
}

CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }

CohClass operator*(const CohClass& a, const CohClass& b) {
  if (a.labels() != b.labels()) throw ArgumentError("classes live on different label sets");
  CohClass out(a.labels());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      GeneratorWord w = to_word(ma);
      GeneratorWord wb = to_word(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_word(w, ca * cb);
    }
  }
  return out;
}

CohClass reduce_arnold(const std::vector<Label>& labels, const GeneratorWord& word,
                       const Rational& c) {
  CohClass out(labels);
  out.add_word(word, c);
  return out;
}

CohClass alpha_class(Label p, Label q, const std::vector<Label>& labels) {
  check_labels(labels);
  if (p == q) throw ArgumentError("alpha needs two distinct labels");
  if (!has_label(labels, p) || !has_label(labels, q)) {
    throw ArgumentError("alpha index outside the label set");
  }
  CohClass out(labels);
  const Label base = labels.front();
  if (p == base || q == base) {
    out.add_word({Generator::eta(p == base ? q : p)}, 1);
  } else {
    out.add_word({Generator::eta(p)}, 1);
    out.add_word({Generator::eta(q)}, 1);
    out.add_word({Generator::omega(p, q)}, -2);
  }
  return out;
}

CohClass alpha_expand(const AlphaWord& word, const std::vector<Label>& labels) {
  CohClass out = CohClass::one(labels);
  for (const auto& [p, q] : word) out = out * alpha_class(p, q, labels);
  return out;
}

CohClass quotient_q(const Chain& x, const std::vector<Label>& labels) {
  CohClass out(labels);
  for (const auto& [g, c] : x) {
    if (g.externals != labels) throw ArgumentError("graph labels differ from the class labels");
    if (g.internal_count > 0) continue;
    AlphaWord w;
    for (const Edge& e : g.edges) {
      w.emplace_back(g.externals[static_cast<std::size_t>(e.a)],
                     g.externals[static_cast<std::size_t>(e.b)]);
    }
    CohClass term = alpha_expand(w, labels);
    term *= c;
    out += term;
  }
  return out;
}

std::vector<std::vector<OmegaEtaMonomial>> normal_basis(const std::vector<Label>& labels,
                                                        bool with_eta) {
  check_labels(labels);
  std::vector<Label> free(labels.begin() + 1, labels.end());
  std::vector<OmegaEtaMonomial> current{OmegaEtaMonomial{}};
  // For each second index j choose nothing or one omega_ij with i < j.
  for (std::size_t t = 0; t < free.size(); ++t) {
    std::vector<OmegaEtaMonomial> next;
    for (const auto& m : current) {
      next.push_back(m);
      for (std::size_t s = 0; s < t; ++s) {
        OmegaEtaMonomial e = m;
        e.omega.emplace_back(free[s], free[t]);
        next.push_back(std::move(e));
      }
    }
    current = std::move(next);
  }
  if (with_eta) {
    std::vector<OmegaEtaMonomial> next;
    for (const auto& m : current) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
        OmegaEtaMonomial e = m;
        for (std::size_t s = 0; s < free.size(); ++s) {
          if (mask >> s & 1u) e.eta.push_back(free[s]);
        }
        next.push_back(std::move(e));
      }
    }
    current = std::move(next);
  }
  std::vector<std::vector<OmegaEtaMonomial>> by_degree;
  for (auto& m : current) {
    auto d = static_cast<std::size_t>(m.degree());
    if (by_degree.size() <= d) by_degree.resize(d + 1);
    by_degree[d].push_back(std::move(m));
  }
  for (auto& v : by_degree) std::sort(v.begin(), v.end());
  return by_degree;
}

std::vector<std::size_t> betti_table(int n) {
  if (n < 1) throw ArgumentError("arity must be at least 1");
  std::vector<Label> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
  std::vector<std::size_t> out;
  for (const auto& d : normal_basis(labels)) out.push_back(d.size());
  return out;
}

std::vector<std::size_t> configuration_betti(int points) {
  if (points < 0) throw ArgumentError("point count must be non-negative");
  std::vector<Label> labels(static_cast<std::size_t>(points + 1));
  for (int i = 0; i <= points; ++i) labels[static_cast<std::size_t>(i)] = i;
  std::vector<std::size_t> out;
  for (const auto& d : normal_basis(labels, false)) out.push_back(d.size());
  return out;
}

std::vector<std::pair<std::pair<Label, Label>, Rational>> to_alpha(const Generator& g,
                                                                  Label basepoint) {
  if (g.kind == Generator::Kind::eta) return {{{basepoint, g.i}, Rational(1)}};
  Rational half(1, 2);
  return {{{basepoint, g.i}, half}, {{basepoint, g.j}, half}, {{g.i, g.j}, -half}};
}

CohClass act(const CohClass& x, const std::map<Label, Label>& sigma) {
  std::vector<Label> target;
  for (Label l : x.labels()) {
    auto it = sigma.find(l);
    if (it == sigma.end()) throw ArgumentError("relabelling does not cover every label");
    target.push_back(it->second);
  }
  std::sort(target.begin(), target.end());
  if (std::adjacent_find(target.begin(), target.end()) != target.end()) {
    throw ArgumentError("relabelling is not injective");
  }
  auto image = [&](const Generator& g) {
    CohClass c(target);
    for (const auto& [pq, coeff] : to_alpha(g, x.basepoint())) {
      CohClass a = alpha_class(sigma.at(pq.first), sigma.at(pq.second), target);
      a *= coeff;
      c += a;
    }
    return c;
  };
  CohClass out(target);
  for (const auto& [m, c] : x.terms()) {
    CohClass term = CohClass::one(target);
    for (const Generator& g : to_word(m)) term = term * image(g);
    term *= c;
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------

AlphaPolynomial alpha_monomial(AlphaWord word, const Rational& c) {
  for (auto& [p, q] : word) {
    if (p == q) throw ArgumentError("alpha needs two distinct labels");
    if (p > q) std::swap(p, q);
  }
  int sign = 1;
  for (std::size_t k = 1; k < word.size(); ++k) {
    for (std::size_t p = k; p > 0 && word[p] < word[p - 1]; --p) {
      std::swap(word[p], word[p - 1]);
      sign = -sign;
    }
  }
  AlphaPolynomial out;
  if (std::adjacent_find(word.begin(), word.end()) != word.end()) return out;
  out.add(word, sign > 0 ? c : Rational(-c));
  return out;
}

AlphaPolynomial alpha_multiply(const AlphaPolynomial& a, const AlphaPolynomial& b) {
  AlphaPolynomial out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      AlphaWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out += alpha_monomial(std::move(w), ca * cb);
    }
  }
  return out;
}

AlphaPolynomial cyclic_arnold_relation(Label i1, Label i2, Label i3, Label i4) {
  std::vector<Label> idx{i1, i2, i3, i4};
  std::vector<int> perm{0, 1, 2, 3};
  AlphaPolynomial out;
  do {
    if (permutation_sign(perm) < 0) continue;
    Label a = idx[static_cast<std::size_t>(perm[0])];
    Label b = idx[static_cast<std::size_t>(perm[1])];
    Label c = idx[static_cast<std::size_t>(perm[2])];
    out += alpha_monomial({{a, b}, {b, c}});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json coh_to_json(const CohClass& c) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, q] : c.terms()) {
    nlohmann::json omega = nlohmann::json::array();
    for (const auto& [i, j] : m.omega) omega.push_back({i, j});
    terms.push_back({{"omega", omega}, {"eta", m.eta}, {"coeff", to_string(q)}});
  }
  return {{"labels", c.labels()}, {"terms", terms}};
}

CohClass coh_from_json(const nlohmann::json& j) {
  try {
    CohClass out(j.at("labels").get<std::vector<Label>>());
    for (const auto& t : j.at("terms")) {
      OmegaEtaMonomial m;
      for (const auto& pair : t.at("omega")) m.omega.emplace_back(pair.at(0).get<Label>(), pair.at(1).get<Label>());
      m.eta = t.at("eta").get<std::vector<Label>>();
      out.add_monomial(m, parse_rational(t.at("coeff").get<std::string>()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("cohomology record: ") + e.what());
  } catch (const ArgumentError& e) {
    throw LoadError(std::string("cohomology record: ") + e.what());
  }
}

std::string describe(const OmegaEtaMonomial& m) {
  if (m.omega.empty() && m.eta.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [i, j] : m.omega) {
    out << (first ? "" : " ") << "w" << i << "," << j;
    first = false;
  }
  for (Label l : m.eta) {
    out << (first ? "" : " ") << "n" << l;
    first = false;
  }
  return out.str();
}

std::string describe(const CohClass& c) {
  if (c.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, q] : c.terms()) {
    out << (first ? "" : " + ") << "(" << to_string(q) << ") " << describe(m);
    first = false;
  }
  return out.str();
}

}  // namespace pgc
