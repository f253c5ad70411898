#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pgc/complexes.hpp"
#include "pgc/errors.hpp"
#include "pgc/interchange.hpp"

using namespace pgc;

namespace {

OrientedGraph edges_graph(std::vector<Label> ext, int m, Mode mode, std::vector<Edge> edges) {
  return OrientedGraph::from_edges(std::move(ext), m, mode, edges);
}

// Externals {0,1,2}, internals i0 = 3, i1 = 4: i0-i1 plus all six boundary edges.
OrientedGraph double_star() {
  std::vector<Edge> e{Edge(3, 4)};
  for (VertexId a : {3, 4}) {
    for (VertexId b : {0, 1, 2}) e.emplace_back(a, b);
  }
  return edges_graph({0, 1, 2}, 2, Mode::projective, e);
}

SignedCanonicalGraph plus_graph() {
  return canonicalize(edges_graph({0, 1, 2, 3}, 1, Mode::projective,
                                  {Edge(0, 4), Edge(1, 4), Edge(2, 4), Edge(3, 4)}));
}

/// Contraction computed letter by letter from the definition.
std::optional<SignedCanonicalGraph> contract_by_hand(const OrientedGraph& g, Edge e, VertexId head) {
  const VertexId tail = e.other(head);
  for (const Edge& f : g.edges()) {
    if (f.touches(head) && f != e && g.has_edge(Edge(f.other(head), tail))) return std::nullopt;
  }
  std::vector<Letter> word = g.word();
  int sign = 1;
  auto drop = [&](Letter x) {
    auto it = std::find(word.begin(), word.end(), x);
    if ((it - word.begin()) % 2) sign = -sign;
    word.erase(it);
  };
  drop(Letter::edge(e));
  if (g.mode() == Mode::projective) drop(Letter::vertex(head));
  auto shift = [head](VertexId v) { return v > head ? v - 1 : v; };
  for (Letter& x : word) {
    if (x.is_vertex()) {
      x = Letter::vertex(shift(x.a));
    } else {
      Edge f = x.as_edge();
      if (f.touches(head)) f = Edge(f.other(head), tail);
      x = Letter::edge(Edge(shift(f.a), shift(f.b)));
    }
  }
  auto c = canonicalize(OrientedGraph(g.externals(), g.internal_count() - 1, g.mode(), word));
  c.sign *= sign;
  return c;
}

}  // namespace

TEST_CASE("canonicalize: small fixed cases") {
  auto single = canonicalize(edges_graph({0, 1}, 0, Mode::affine, {Edge(0, 1)}));
  CHECK(single.sign == 1);
  CHECK(single.graph.edges == std::vector<Edge>{Edge(0, 1)});

  auto two = canonicalize(edges_graph({0, 1, 2}, 0, Mode::affine, {Edge(1, 2), Edge(0, 1)}));
  CHECK(two.sign == -1);
  CHECK(two.graph.edges == (std::vector<Edge>{Edge(0, 1), Edge(1, 2)}));

  auto star = canonicalize(double_star());
  CHECK(star.sign != 0);
  CHECK(oracle::sign_against(double_star(), star.graph) == star.sign);
}

TEST_CASE("canonicalize agrees with the brute-force parity oracle") {
  std::mt19937_64 rng(7);
  int zeros = 0;
  for (Mode mode : {Mode::affine, Mode::projective}) {
    for (int m = 0; m <= 4; ++m) {
      for (int trial = 0; trial < 60; ++trial) {
        OrientedGraph g = oracle::random_graph(rng, {0, 1}, m, mode, 0.45);
        auto c = canonicalize(g);
        auto expected = oracle::sign_against(g, c.graph);
        REQUIRE(expected.has_value());
        CHECK(*expected == c.sign);
        zeros += c.sign == 0;
      }
    }
  }
  CHECK(zeros > 0);  // the sample must exercise odd automorphisms
}

TEST_CASE("canonicalize is invariant under internal relabelling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    const int m = 1 + trial % 4;
    OrientedGraph g = oracle::random_graph(rng, {0, 1, 2}, m, Mode::projective, 0.5);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Letter> word;
    for (const Letter& x : g.word()) {
      auto mv = [&](VertexId v) { return v < 3 ? v : 3 + perm[v - 3]; };
      word.push_back(x.is_vertex() ? Letter::vertex(mv(x.a)) : Letter::edge(Edge(mv(x.a), mv(x.b))));
    }
    OrientedGraph h(g.externals(), m, Mode::projective, word);
    auto cg = canonicalize(g), ch = canonicalize(h);
    CHECK(cg.graph == ch.graph);
    // Letters are renamed in place, so positions and hence signs agree.
    CHECK(ch.sign == cg.sign);
  }
}

TEST_CASE("odd automorphism gives zero") {
  // Two internal vertices, each joined to 0 and 1: swapping them is odd in
  // projective mode (one vertex swap plus two edge swaps).
  auto g = edges_graph({0, 1}, 2, Mode::projective, {Edge(0, 2), Edge(1, 2), Edge(0, 3), Edge(1, 3)});
  CHECK(canonicalize(g).sign == 0);
  auto a = edges_graph({0, 1}, 2, Mode::affine, {Edge(0, 2), Edge(1, 2), Edge(0, 3), Edge(1, 3)});
  CHECK(canonicalize(a).sign != 0);
}

TEST_CASE("canonicalize properties: idempotent and antisymmetric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    OrientedGraph g = oracle::random_graph(rng, {0, 1, 2}, trial % 3, Mode::projective, 0.6);
    auto c = canonicalize(g);
    if (c.sign == 0 || g.word().size() < 2) continue;
    auto again = canonicalize(c.graph.oriented());
    CHECK(again.sign == 1);
    CHECK(again.graph == c.graph);
    std::vector<Letter> w = g.word();
    std::swap(w[0], w[1]);
    auto swapped = canonicalize(OrientedGraph(g.externals(), g.internal_count(), g.mode(), w));
    CHECK(swapped.graph == c.graph);
    CHECK(swapped.sign == -c.sign);
  }
}

TEST_CASE("malformed graphs raise StructuralError") {
  CHECK_THROWS_AS(edges_graph({0, 1}, 0, Mode::affine, {Edge(0, 1), Edge(1, 0)}), StructuralError);
  CHECK_THROWS_AS(OrientedGraph({0, 1}, 0, Mode::affine, {Letter{1, 1}}), StructuralError);
  CHECK_THROWS_AS(OrientedGraph({1, 0}, 0, Mode::affine, {}), StructuralError);
  CHECK_THROWS_AS(OrientedGraph({0, 1}, 1, Mode::projective, {Letter::edge(Edge(0, 2))}),
                  StructuralError);
}

TEST_CASE("delete_edge") {
  auto single = canonicalize(edges_graph({0, 1}, 0, Mode::affine, {Edge(0, 1)}));
  auto empty = delete_edge(single, Edge(0, 1));
  CHECK(empty.sign == 1);
  CHECK(empty.graph.edges.empty());

  auto path = canonicalize(edges_graph({0, 1, 2}, 0, Mode::affine, {Edge(0, 1), Edge(1, 2)}));
  auto cut = delete_edge(path, Edge(1, 2));
  CHECK(cut.sign == -1);
  CHECK(cut.graph.edges == std::vector<Edge>{Edge(0, 1)});

  CHECK_THROWS_AS(delete_edge(single, Edge(0, 2)), ArgumentError);

  // Boundary edge of the m = 2 graph against the parity oracle.
  auto star = canonicalize(double_star());
  for (const Edge& e : star.graph.edges) {
    OrientedGraph og = star.graph.oriented();
    auto pos = std::find(og.word().begin(), og.word().end(), Letter::edge(e)) - og.word().begin();
    std::vector<Letter> w = og.word();
    w.erase(w.begin() + pos);
    OrientedGraph rest(og.externals(), og.internal_count(), og.mode(), w);
    auto del = delete_edge(star, e);
    auto oracle_sign = oracle::sign_against(rest, del.graph);
    REQUIRE(oracle_sign.has_value());
    CHECK(del.sign == *oracle_sign * star.sign * (pos % 2 ? -1 : 1));
  }
}

TEST_CASE("delete_edge anticommutes") {
  auto star = canonicalize(double_star());
  const auto& E = star.graph.edges;
  for (std::size_t i = 0; i < E.size(); ++i) {
    for (std::size_t j = i + 1; j < E.size(); ++j) {
      // Work on one fixed numbering so e and f keep their meaning.
      OrientedGraph a = star.graph.oriented(), b = star.graph.oriented();
      int sa = a.delete_edge(E[i]) * a.delete_edge(E[j]);
      int sb = b.delete_edge(E[j]) * b.delete_edge(E[i]);
      auto ca = canonicalize(a), cb = canonicalize(b);
      CHECK(ca.graph == cb.graph);
      CHECK(sa * ca.sign == -sb * cb.sign);
    }
  }
}

TEST_CASE("contract_edge") {
  // Triangle 0 - i0 - 1 - 0: the edge 0-i0 lies in a triangle.
  auto tri = canonicalize(edges_graph({0, 1}, 1, Mode::projective,
                                      {Edge(0, 1), Edge(0, 2), Edge(1, 2)}));
  CHECK_FALSE(contract_edge(tri, Edge(0, 2), 2).has_value());

  auto plus = plus_graph();
  auto cut = delete_edge(plus, Edge(2, 4));
  auto merged = contract_edge(cut, Edge(3, 4), 4);
  REQUIRE(merged.has_value());
  CHECK(merged->graph.edges == (std::vector<Edge>{Edge(0, 3), Edge(1, 3)}));
  CHECK(merged->graph.internal_count == 0);

  CHECK_THROWS_AS(contract_edge(plus, Edge(3, 4), 3), ArgumentError);
  // Internal edge of the m = 2 graph: the endpoints share 0, 1, 2.
  auto star = canonicalize(double_star());
  CHECK_FALSE(contract_edge(star, Edge(3, 4), 4).has_value());
}

TEST_CASE("contract_edge matches the hand contraction on every small graph") {
  int checked = 0;
  for (Mode mode : {Mode::projective, Mode::affine}) {
    const BasisKind kind = mode == Mode::projective ? BasisKind::projective_all : BasisKind::kontsevich;
    for (int m = 1; m <= 2; ++m) {
      for (int e = 0; e <= max_edge_count(3, m, kind); ++e) {
        for (const auto& g : enumerate_basis({0, 1, 2}, m, e, kind)) {
          SignedCanonicalGraph sg{g, 1};
          OrientedGraph og = g.oriented();
          for (const Edge& edge : g.edges) {
            for (VertexId head : {edge.a, edge.b}) {
              if (head < 3) continue;
              auto lib = contract_edge(sg, edge, head);
              auto hand = contract_by_hand(og, edge, head);
              REQUIRE(lib.has_value() == hand.has_value());
              if (lib) {
                CHECK(lib->graph == hand->graph);
                CHECK(lib->sign == hand->sign);
              }
              ++checked;
            }
          }
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("oslash") {
  auto plus = plus_graph();
  auto r = oslash(plus, Edge(3, 4), 4, Edge(2, 4));
  REQUIRE(r.has_value());
  CHECK(r->graph.edges == (std::vector<Edge>{Edge(0, 3), Edge(1, 3)}));
  auto seq = contract_edge(delete_edge(plus, Edge(2, 4)), Edge(3, 4), 4);
  CHECK(r->sign == seq->sign);
  CHECK_THROWS_AS(oslash(plus, Edge(3, 4), 4, Edge(3, 4)), ArgumentError);
  // f must touch the head.
  auto path = canonicalize(edges_graph({0, 1, 2}, 1, Mode::projective,
                                       {Edge(0, 3), Edge(1, 3), Edge(1, 2)}));
  CHECK_THROWS_AS(oslash(path, Edge(0, 3), 3, Edge(1, 2)), ArgumentError);

  // Sparse m = 2 graph: i0 = 3 on {0,1}, i1 = 4 on {0,2}, edge i0-i1.
  auto g = canonicalize(edges_graph({0, 1, 2}, 2, Mode::projective,
                                    {Edge(0, 3), Edge(1, 3), Edge(3, 4), Edge(2, 4), Edge(0, 4)}));
  int defined = 0;
  for (const Edge& e : g.graph.edges) {
    if (e.a < 3) continue;  // internal edge only
    for (VertexId head : {e.a, e.b}) {
      for (const Edge& f : g.graph.edges) {
        if (f == e || !f.touches(head)) continue;
        auto lib = oslash(g, e, head, f);
        OrientedGraph og = g.graph.oriented();
        int s1 = og.delete_edge(f);
        int s2 = og.contract_edge(e, head);
        REQUIRE(lib.has_value() == (s2 != 0));
        if (!lib) continue;
        ++defined;
        auto c = canonicalize(og);
        CHECK(lib->graph == c.graph);
        CHECK(lib->sign == s1 * s2 * c.sign * g.sign);
      }
    }
  }
  CHECK(defined > 0);
}

TEST_CASE("relabel_external") {
  auto single = canonicalize(edges_graph({0, 1}, 0, Mode::affine, {Edge(0, 1)}));
  auto id = relabel_external(single, {{0, 0}, {1, 1}});
  CHECK(id == single);
  auto swapped = relabel_external(single, {{0, 1}, {1, 0}});
  CHECK(swapped == single);

  auto plus = plus_graph();
  std::map<Label, Label> cycle{{0, 1}, {1, 2}, {2, 0}, {3, 3}};
  auto thrice = relabel_external(relabel_external(relabel_external(plus, cycle), cycle), cycle);
  CHECK(thrice == plus);

  CHECK_THROWS_AS(relabel_external(single, {{0, 2}, {1, 2}}), ArgumentError);
  CHECK_THROWS_AS(relabel_external(single, {{0, 1}}), ArgumentError);

  // Composition on random graphs.
  std::mt19937_64 rng(5);
  std::map<Label, Label> sigma{{0, 2}, {1, 0}, {2, 1}}, tau{{0, 1}, {1, 0}, {2, 2}}, st;
  for (auto [k, v] : tau) st[k] = sigma.at(v);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = canonicalize(oracle::random_graph(rng, {0, 1, 2}, trial % 3, Mode::projective, 0.5));
    CHECK(relabel_external(g, st) == relabel_external(relabel_external(g, tau), sigma));
  }
}

TEST_CASE("admissibility") {
  CHECK(is_admissible(plus_graph().graph, Admissibility::projective));
  auto tripod = edges_graph({0, 1, 2}, 1, Mode::projective, {Edge(0, 3), Edge(1, 3), Edge(2, 3)});
  CHECK_FALSE(is_admissible(tripod, Admissibility::projective));
  auto tripod_affine = edges_graph({0, 1, 2}, 1, Mode::affine, {Edge(0, 3), Edge(1, 3), Edge(2, 3)});
  CHECK(is_admissible(tripod_affine, Admissibility::kontsevich));
  auto whisker = edges_graph({0}, 1, Mode::projective, {Edge(0, 1)});
  CHECK_FALSE(is_admissible(whisker, Admissibility::projective));
  auto whisker_affine = edges_graph({0}, 1, Mode::affine, {Edge(0, 1)});
  CHECK_FALSE(is_admissible(whisker_affine, Admissibility::kontsevich));
}

TEST_CASE("interchange round trip is byte exact") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    Mode mode = trial % 2 ? Mode::affine : Mode::projective;
    auto g = canonicalize(oracle::random_graph(rng, {0, 2, 5}, trial % 3, mode, 0.5));
    std::string text = dump_graph(g);
    auto back = parse_graph(text);
    CHECK(back == g);
    CHECK(dump_graph(back) == text);
  }
  auto plus = plus_graph();
  CHECK(dump_graph(plus) ==
        R"({"edges":[[0,"i0"],[1,"i0"],[2,"i0"],[3,"i0"]],"external":[0,1,2,3],"internal_count":1,"mode":"projective","sign":1})");
}

TEST_CASE("interchange rejects malformed records") {
  CHECK_THROWS_AS(parse_graph("not json"), LoadError);
  CHECK_THROWS_AS(parse_graph(R"({"edges":[],"external":[0,1]})"), LoadError);
  // Unsorted edge list.
  CHECK_THROWS_AS(parse_graph(R"({"edges":[[1,2],[0,1]],"external":[0,1,2],"internal_count":0,"mode":"affine","sign":1})"),
                  LoadError);
  // Internal vertex out of range.
  CHECK_THROWS_AS(parse_graph(R"({"edges":[[0,"i3"]],"external":[0],"internal_count":1,"mode":"affine","sign":1})"),
                  LoadError);
  CHECK_THROWS_AS(parse_graph(R"({"edges":[],"external":[0],"internal_count":0,"mode":"sideways","sign":1})"),
                  LoadError);
  CHECK_THROWS_AS(parse_graph(R"({"edges":[],"external":[0],"internal_count":0,"mode":"affine","sign":2})"),
                  LoadError);
}
