#include "pgc/cooperad.hpp"

#include <set>

#include "pgc/errors.hpp"
#include "pgc/interchange.hpp"

namespace pgc {

AuxLabels default_aux(const std::vector<Label>& labels) {
  Label top = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  return {top + 1, top + 2};
}

namespace {

struct Partition {
  std::vector<char> left;  // per external position
};

Partition check_partition(const std::vector<Label>& externals, const std::vector<Label>& I,
                          const std::vector<Label>& J) {
  std::vector<Label> all = I;
  all.insert(all.end(), J.begin(), J.end());
  std::sort(all.begin(), all.end());
  if (all != externals) throw ArgumentError("I and J must partition the external labels");
  Partition p;
  for (Label l : externals) p.left.push_back(std::find(I.begin(), I.end(), l) != I.end());
  return p;
}

void check_aux(const std::vector<Label>& externals, const AuxLabels& aux) {
  if (aux.x == aux.y || std::binary_search(externals.begin(), externals.end(), aux.x) ||
      std::binary_search(externals.begin(), externals.end(), aux.y)) {
    throw ArgumentError("auxiliary labels must be distinct and unused");
  }
}

std::vector<Label> with_aux(std::vector<Label> side, Label aux) {
  side.push_back(aux);
  std::sort(side.begin(), side.end());
  if (std::adjacent_find(side.begin(), side.end()) != side.end()) {
    throw ArgumentError("auxiliary label collides with an external label");
  }
  return side;
}

bool on_left(const CanonicalGraph& g, const Partition& p, const Splitting& s, VertexId v) {
  if (v < g.n()) return p.left[static_cast<std::size_t>(v)] != 0;
  return s.internal_left[static_cast<std::size_t>(v - g.n())] != 0;
}

// One side of a splitting as an oriented graph; nullopt on a double edge.
struct SideBuild {
  std::vector<Label> labels;
  std::vector<VertexId> new_id;  // old id -> new id, -1 when absent
  VertexId aux_id = 0;
  int internal_count = 0;
};

SideBuild side_layout(const CanonicalGraph& g, const Partition& p, const Splitting& s,
                      bool left, const std::vector<Label>& side_labels) {
  SideBuild b;
  b.labels = side_labels;
  b.new_id.assign(static_cast<std::size_t>(g.n() + g.internal_count), -1);
  const int ns = static_cast<int>(side_labels.size());
  for (VertexId v = 0; v < g.n(); ++v) {
    if ((p.left[static_cast<std::size_t>(v)] != 0) != left) continue;
    Label l = g.externals[static_cast<std::size_t>(v)];
    b.new_id[static_cast<std::size_t>(v)] = static_cast<VertexId>(
        std::lower_bound(side_labels.begin(), side_labels.end(), l) - side_labels.begin());
  }
  for (int k = 0; k < g.internal_count; ++k) {
    if ((s.internal_left[static_cast<std::size_t>(k)] != 0) != left) continue;
    b.new_id[static_cast<std::size_t>(g.n() + k)] = ns + b.internal_count++;
  }
  return b;
}

}  // namespace

std::vector<Splitting> enumerate_splittings(const CanonicalGraph& g, const std::vector<Label>& I,
                                            const std::vector<Label>& J) {
  Partition p = check_partition(g.externals, I, J);
  std::vector<Splitting> out;
  const int m = g.internal_count;
  for (std::size_t vmask = 0; vmask < (std::size_t{1} << m); ++vmask) {
    Splitting base;
    for (int k = 0; k < m; ++k) base.internal_left.push_back((vmask >> k & 1u) != 0);
    base.edge_left.assign(g.edges.size(), 0);
    std::vector<std::size_t> cross;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      bool a = on_left(g, p, base, g.edges[i].a);
      bool b = on_left(g, p, base, g.edges[i].b);
      if (a == b) {
        base.edge_left[i] = a;
      } else {
        cross.push_back(i);
      }
    }
    for (std::size_t emask = 0; emask < (std::size_t{1} << cross.size()); ++emask) {
      Splitting s = base;
      for (std::size_t t = 0; t < cross.size(); ++t) s.edge_left[cross[t]] = (emask >> t & 1u) != 0;
      out.push_back(std::move(s));
    }
  }
  return out;
}

TensorChain cocompose(const Chain& x, const std::vector<Label>& I, const std::vector<Label>& J,
                      std::optional<AuxLabels> aux_opt) {
  TensorChain out;
  for (const auto& [g, c] : x) {
    if (g.mode != Mode::projective) throw ArgumentError("cocompose needs projective graphs");
    AuxLabels aux = aux_opt ? *aux_opt : default_aux(g.externals);
    Partition p = check_partition(g.externals, I, J);
    check_aux(g.externals, aux);
    std::vector<Label> left_labels = with_aux(I, aux.x);
    std::vector<Label> right_labels = with_aux(J, aux.y);
    for (const Splitting& s : enumerate_splittings(g, I, J)) {
      SideBuild L = side_layout(g, p, s, true, left_labels);
      SideBuild R = side_layout(g, p, s, false, right_labels);
      L.aux_id = static_cast<VertexId>(
          std::lower_bound(left_labels.begin(), left_labels.end(), aux.x) - left_labels.begin());
      R.aux_id = static_cast<VertexId>(
          std::lower_bound(right_labels.begin(), right_labels.end(), aux.y) - right_labels.begin());

      // Canonical word of g: internal vertices, then sorted edges. Split it
      // into the two sides keeping relative order; count crossings.
      std::vector<Letter> lw, rw;
      std::set<Edge> lseen, rseen;
      long inversions = 0;
      long right_so_far = 0;
      bool doubled = false;
      auto place = [&](bool left, Letter letter) {
        if (left) {
          lw.push_back(letter);
          inversions += right_so_far;
        } else {
          rw.push_back(letter);
          ++right_so_far;
        }
      };
      for (int k = 0; k < g.internal_count; ++k) {
        bool left = s.internal_left[static_cast<std::size_t>(k)] != 0;
        SideBuild& side = left ? L : R;
        place(left, Letter::vertex(side.new_id[static_cast<std::size_t>(g.n() + k)]));
      }
      for (std::size_t i = 0; i < g.edges.size() && !doubled; ++i) {
        bool left = s.edge_left[i] != 0;
        SideBuild& side = left ? L : R;
        auto end = [&](VertexId v) {
          VertexId id = side.new_id[static_cast<std::size_t>(v)];
          return id < 0 ? side.aux_id : id;
        };
        Edge e(end(g.edges[i].a), end(g.edges[i].b));
        if (!(left ? lseen : rseen).insert(e).second) doubled = true;
        place(left, Letter::edge(e));
      }
      if (doubled) continue;
      OrientedGraph lg(left_labels, L.internal_count, Mode::projective, std::move(lw));
      OrientedGraph rg(right_labels, R.internal_count, Mode::projective, std::move(rw));
      SignedCanonicalGraph lc = canonicalize(lg);
      SignedCanonicalGraph rc = canonicalize(rg);
      if (lc.sign == 0 || rc.sign == 0) continue;
      int sign = (inversions % 2 == 0 ? 1 : -1) * lc.sign * rc.sign;
      Chain left_red = reduce_to_based(Chain(lc.graph, 1));
      if (left_red.empty()) continue;
      Chain right_red = reduce_to_based(Chain(rc.graph, 1));
      for (const auto& [a, ca] : left_red) {
        for (const auto& [b, cb] : right_red) out.add({a, b}, c * sign * ca * cb);
      }
    }
  }
  return out;
}

TensorChain tensor_differential(const TensorChain& t) {
  TensorChain out;
  for (const auto& [key, c] : t) {
    const auto& [a, b] = key;
    for (const auto& [da, ca] : d_proj(Chain(a, 1))) out.add({da, b}, c * ca);
    Rational koszul = a.degree() % 2 == 0 ? c : Rational(-c);
    for (const auto& [db, cb] : d_proj(Chain(b, 1))) out.add({a, db}, koszul * cb);
  }
  return out;
}

TensorChain tensor_swap(const TensorChain& t) {
  TensorChain out;
  for (const auto& [key, c] : t) {
    const auto& [a, b] = key;
    bool odd = (a.degree() % 2 != 0) && (b.degree() % 2 != 0);
    out.add({b, a}, odd ? Rational(-c) : c);
  }
  return out;
}

TensorChain tensor_relabel(const TensorChain& t, const std::map<Label, Label>& left,
                           const std::map<Label, Label>& right) {
  TensorChain out;
  for (const auto& [key, c] : t) {
    Chain a = reduce_to_based(relabel(Chain(key.first, 1), left));
    Chain b = reduce_to_based(relabel(Chain(key.second, 1), right));
    for (const auto& [ka, ca] : a) {
      for (const auto& [kb, cb] : b) out.add({ka, kb}, c * ca * cb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

CohTensor::CohTensor(std::vector<Label> left, std::vector<Label> right)
    : left_(std::move(left)), right_(std::move(right)) {}

CohTensor CohTensor::outer(const CohClass& a, const CohClass& b) {
  CohTensor out(a.labels(), b.labels());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) out.terms_.add({ma, mb}, ca * cb);
  }
  return out;
}

CohTensor& CohTensor::operator+=(const CohTensor& other) {
  if (other.left_ != left_ || other.right_ != right_) {
    throw ArgumentError("tensors live on different label sets");
  }
  terms_ += other.terms_;
  return *this;
}

CohTensor& CohTensor::operator*=(const Rational& c) {
  terms_ *= c;
  return *this;
}

CohTensor operator*(const CohTensor& x, const CohTensor& y) {
  if (x.left_ != y.left_ || x.right_ != y.right_) {
    throw ArgumentError("tensors live on different label sets");
  }
  CohTensor out(x.left_, x.right_);
  for (const auto& [kx, cx] : x.terms_) {
    for (const auto& [ky, cy] : y.terms_) {
      CohClass a(x.left_), b(x.right_), c(x.left_), d(x.right_);
      a.add_monomial(kx.first, 1);
      b.add_monomial(kx.second, 1);
      c.add_monomial(ky.first, 1);
      d.add_monomial(ky.second, 1);
      bool odd = (kx.second.degree() % 2 != 0) && (ky.first.degree() % 2 != 0);
      CohTensor term = CohTensor::outer(a * c, b * d);
      term *= odd ? Rational(-cx * cy) : Rational(cx * cy);
      out += term;
    }
  }
  return out;
}

CohTensor cocompose_cohomology(const CohClass& c, const std::vector<Label>& I,
                               const std::vector<Label>& J, std::optional<AuxLabels> aux_opt) {
  if (I.empty() || J.empty()) throw ArgumentError("both sides of the partition must be non-empty");
  check_partition(c.labels(), I, J);
  AuxLabels aux = aux_opt ? *aux_opt : default_aux(c.labels());
  check_aux(c.labels(), aux);
  std::vector<Label> left = with_aux(I, aux.x);
  std::vector<Label> right = with_aux(J, aux.y);
  auto in_left = [&](Label l) { return std::find(I.begin(), I.end(), l) != I.end(); };

  auto alpha_image = [&](Label u, Label v) {
    if (in_left(u) && in_left(v)) {
      return CohTensor::outer(alpha_class(u, v, left), CohClass::one(right));
    }
    if (!in_left(u) && !in_left(v)) {
      return CohTensor::outer(CohClass::one(left), alpha_class(u, v, right));
    }
    if (!in_left(u)) std::swap(u, v);
    CohTensor t = CohTensor::outer(alpha_class(u, aux.x, left), CohClass::one(right));
    t += CohTensor::outer(CohClass::one(left), alpha_class(aux.y, v, right));
    return t;
  };

  CohTensor out(left, right);
  for (const auto& [m, coeff] : c.terms()) {
    GeneratorWord word;
    for (const auto& [i, j] : m.omega) word.push_back(Generator::omega(i, j));
    for (Label l : m.eta) word.push_back(Generator::eta(l));
    CohTensor term = CohTensor::outer(CohClass::one(left), CohClass::one(right));
    for (const Generator& g : word) {
      CohTensor image(left, right);
      for (const auto& [pq, q] : to_alpha(g, c.basepoint())) {
        CohTensor a = alpha_image(pq.first, pq.second);
        a *= q;
        image += a;
      }
      term = term * image;
    }
    term *= coeff;
    out += term;
  }
  return out;
}

CohTensor quotient_q(const TensorChain& t, const std::vector<Label>& left_labels,
                     const std::vector<Label>& right_labels) {
  CohTensor out(left_labels, right_labels);
  for (const auto& [key, c] : t) {
    if (key.first.internal_count > 0 || key.second.internal_count > 0) continue;
    CohTensor term = CohTensor::outer(quotient_q(Chain(key.first, 1), left_labels),
                                      quotient_q(Chain(key.second, 1), right_labels));
    term *= c;
    out += term;
  }
  return out;
}

nlohmann::json tensor_to_json(const TensorChain& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, c] : t) {
    out.push_back({{"left", graph_to_json({key.first, 1})},
                   {"right", graph_to_json({key.second, 1})},
                   {"coeff", to_string(c)}});
  }
  return out;
}

TensorChain tensor_from_json(const nlohmann::json& j) {
  TensorChain out;
  try {
    for (const auto& rec : j) {
      SignedCanonicalGraph a = graph_from_json(rec.at("left"));
      SignedCanonicalGraph b = graph_from_json(rec.at("right"));
      Rational c = parse_rational(rec.at("coeff").get<std::string>());
      out.add({a.graph, b.graph}, c * a.sign * b.sign);
    }
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("tensor record: ") + e.what());
  } catch (const ArgumentError& e) {
    throw LoadError(std::string("tensor record: ") + e.what());
  }
  return out;
}

}  // namespace pgc
