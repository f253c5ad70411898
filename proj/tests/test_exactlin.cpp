#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "pgc/complexes.hpp"
#include "pgc/errors.hpp"

using namespace pgc;

namespace {

SparseMatrix identity(std::size_t k) {
  SparseMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, 1);
  return m;
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                           double density, bool fractions) {
  SparseMatrix m(rows, cols);
  std::bernoulli_distribution fill(density);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (fill(rng)) m.set(r, c, make_rational(num(rng), fractions ? den(rng) : 1));
    }
  }
  return m;
}

/// Low-rank matrix built as a product, so cancellations are exercised.
SparseMatrix low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  return random_matrix(rng, rows, k, 0.8, true) * random_matrix(rng, k, cols, 0.8, true);
}

}  // namespace

TEST_CASE("rationals stay normalized") {
  Rational q = make_rational(6, -4);
  CHECK(q.get_den() > 0);
  CHECK(q == Rational(-3, 2));
  CHECK(to_string(q) == "-3/2");
  CHECK(parse_rational("10/4") == Rational(5, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK_THROWS_AS(parse_rational("1/0"), ArgumentError);
  CHECK_THROWS_AS(parse_rational("abc"), ArgumentError);
}

TEST_CASE("LinComb never stores zeros") {
  LinComb<int> v;
  v.add(1, 2);
  v.add(1, -2);
  CHECK(v.empty());
  v.add(3, 0);
  CHECK(v.empty());
  v.add(4, 5);
  v *= 0;
  CHECK(v.empty());
}

TEST_CASE("rank of fixed matrices") {
  CHECK(rank(identity(3)) == 3);
  CHECK(rank(SparseMatrix(4, 5)) == 0);
  SparseMatrix m(2, 2);
  m.set(0, 0, 1);
  m.set(0, 1, 2);
  m.set(1, 0, 2);
  m.set(1, 1, 4);
  CHECK(rank(m) == 1);
}

TEST_CASE("rank agrees with the modular oracle and with the transpose") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 3 + trial % 9, cols = 2 + (trial * 7) % 11;
    SparseMatrix m = trial % 2 ? random_matrix(rng, rows, cols, 0.3, true)
                               : low_rank(rng, rows, cols, 1 + trial % 4);
    std::size_t r = rank(m);
    CHECK(r == rank(m.transpose()));
    for (auto p : oracle::kPrimes) CHECK(r == oracle::rank_mod_p(m, p));
  }
}

TEST_CASE("rank is invariant under row and column permutations") {
  std::mt19937_64 rng(99);
  SparseMatrix m = low_rank(rng, 8, 10, 3);
  std::vector<std::size_t> rp(8), cp(10);
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  SparseMatrix q(8, 10);
  for (std::size_t r = 0; r < 8; ++r) {
    for (const auto& [c, v] : m.row(r)) q.set(rp[r], cp[c], v);
  }
  CHECK(rank(q) == rank(m));
}

TEST_CASE("pinwheel relation matrices: exact rank equals rank mod three primes") {
  const std::vector<Label> labels{0, 1, 2};
  for (int e = 0; e <= max_edge_count(3, 2, BasisKind::projective_all); ++e) {
    std::map<CanonicalGraph, std::size_t> column;
    std::vector<Chain> vectors;
    for (const auto& g : enumerate_basis(labels, 2, e, BasisKind::projective_all)) {
      for (VertexId v : {3, 4}) vectors.push_back(pinwheel_vector(g, v));
    }
    if (vectors.empty()) continue;
    for (const auto& vec : vectors) {
      for (const auto& [k, c] : vec) column.emplace(k, column.size());
    }
    SparseMatrix m(vectors.size(), column.size());
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      for (const auto& [k, c] : vectors[r]) m.set(r, column.at(k), c);
    }
    std::size_t r = rank(m);
    for (auto p : oracle::kPrimes) CHECK(r == oracle::rank_mod_p(m, p));
  }
}

TEST_CASE("homology_dimension") {
  CHECK(homology_dimension(SparseMatrix(5, 0), SparseMatrix(0, 5)) == 5);
  CHECK(homology_dimension(SparseMatrix(5, 0), identity(5)) == 0);
  SparseMatrix a(2, 1), b(1, 2);
  a.set(0, 0, 1);
  b.set(0, 0, 1);
  CHECK_THROWS_AS(homology_dimension(a, b), ContractViolation);
  CHECK_THROWS_AS(homology_dimension(SparseMatrix(3, 1), SparseMatrix(1, 2)), ContractViolation);

  GradedBasis basis({0, 1, 2}, BasisKind::projective_based, 2);
  auto in = assemble_differential(basis.slice(-1), basis.slice(0), Differential::projective);
  auto out = assemble_differential(basis.slice(0), basis.slice(1), Differential::projective);
  CHECK(homology_dimension(in, out) == 1);
}

TEST_CASE("in_row_span") {
  std::mt19937_64 rng(1);
  SparseMatrix m = random_matrix(rng, 4, 6, 0.5, true);
  CHECK(in_row_span(m, m.row(0)));
  std::map<std::size_t, Rational> combo;
  for (std::size_t r = 0; r < 4; ++r) {
    for (const auto& [c, v] : m.row(r)) combo[c] += v * Rational(static_cast<long>(r) + 1, 3);
  }
  std::erase_if(combo, [](const auto& kv) { return kv.second == 0; });
  CHECK(in_row_span(m, combo));
  CHECK_FALSE(in_row_span(SparseMatrix(0, 3), {{1, 1}}));
  CHECK(in_row_span(SparseMatrix(0, 3), {}));
}

TEST_CASE("matrix dump round trip") {
  std::mt19937_64 rng(4);
  SparseMatrix m = random_matrix(rng, 5, 7, 0.4, true);
  std::stringstream s;
  write_matrix(s, m);
  CHECK(read_matrix(s) == m);
}
