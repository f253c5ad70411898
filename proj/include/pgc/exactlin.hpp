#pragma once

// Exact sparse linear algebra over the rationals.

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pgc {

/// GMP keeps mpq_class canonical (den > 0, gcd(num, den) = 1) after every
/// arithmetic operation; values built from raw num/den pairs must go through
/// make_rational().
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& q);
/// Parses "p" or "p/q"; throws ArgumentError on malformed text.
Rational parse_rational(std::string_view text);

/// Finite linear combination with no stored zero coefficients.
template <class Key>
class LinComb {
 public:
  using container = std::map<Key, Rational>;
  using const_iterator = typename container::const_iterator;

  LinComb() = default;
  LinComb(const Key& k, const Rational& c) { add(k, c); }

  void add(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const LinComb& other, const Rational& scale = 1) {
    if (scale == 0) return;
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  LinComb& operator+=(const LinComb& other) {
    add(other);
    return *this;
  }
  LinComb& operator-=(const LinComb& other) {
    add(other, -1);
    return *this;
  }
  LinComb& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [k, c] : terms_) c *= s;
    }
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }

  Rational coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const container& terms() const { return terms_; }

  bool operator==(const LinComb& other) const { return terms_ == other.terms_; }

 private:
  container terms_;
};

template <class Key>
using SparseVector = LinComb<Key>;

/// Matrix of a linear map: columns index the source basis, rows the target.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  void add(std::size_t r, std::size_t c, const Rational& v);
  void set(std::size_t r, std::size_t c, const Rational& v);
  Rational at(std::size_t r, std::size_t c) const;
  const std::map<std::size_t, Rational>& row(std::size_t r) const { return data_[r]; }
  void append_row(const std::map<std::size_t, Rational>& entries);

  SparseMatrix transpose() const;
  bool is_zero() const { return nnz() == 0; }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  bool operator==(const SparseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> data_;
};

/// Exact rank over Q (fraction-free integer elimination).
std::size_t rank(const SparseMatrix& m);

/// dim ker(d_out) - rank(d_in). Throws ContractViolation when d_out * d_in != 0
/// or the shapes do not compose.
std::size_t homology_dimension(const SparseMatrix& d_in, const SparseMatrix& d_out);

/// True iff v (indexed by column) lies in the row span of m.
bool in_row_span(const SparseMatrix& m, const std::map<std::size_t, Rational>& v);

/// Incremental row echelon form over Z: rows are inserted one at a time and
/// reduced against pivots keyed by leading column.
class RowEchelon {
 public:
  using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

  /// Returns true when the row was independent of the rows seen so far.
  bool insert(const std::map<std::size_t, Rational>& row);
  bool insert(IntRow row);
  /// True iff the row reduces to zero against the current pivots.
  bool reduces_to_zero(const std::map<std::size_t, Rational>& row) const;
  std::size_t rank() const { return pivots_.size(); }

  static IntRow to_integer_row(const std::map<std::size_t, Rational>& row);

 private:
  IntRow reduce(IntRow row) const;
  std::map<std::size_t, IntRow> pivots_;
};

/// Coordinate dump: header "rows cols nnz", then one "row col num/den" per line.
void write_matrix(std::ostream& out, const SparseMatrix& m);
SparseMatrix read_matrix(std::istream& in);

}  // namespace pgc
