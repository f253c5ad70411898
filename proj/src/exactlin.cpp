#include "pgc/exactlin.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pgc/errors.hpp"

namespace pgc {

Rational make_rational(long num, long den) {
  if (den == 0) throw ArgumentError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string num_text(text.substr(0, slash));
  std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  auto valid = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!valid(num_text) || !valid(den_text)) {
    throw ArgumentError("malformed rational '" + std::string(text) + "'");
  }
  if (num_text[0] == '+') num_text.erase(0, 1);
  if (den_text[0] == '+') den_text.erase(0, 1);
  mpz_class num(num_text), den(den_text);
  if (den == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

std::size_t SparseMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& r : data_) total += r.size();
  return total;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw ArgumentError("matrix index out of range");
  if (v == 0) return;
  auto& row = data_[r];
  auto [it, inserted] = row.try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  }
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw ArgumentError("matrix index out of range");
  if (v == 0) {
    data_[r].erase(c);
  } else {
    data_[r][c] = v;
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw ArgumentError("matrix index out of range");
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Rational(0) : it->second;
}

void SparseMatrix::append_row(const std::map<std::size_t, Rational>& entries) {
  data_.emplace_back();
  ++rows_;
  for (const auto& [c, v] : entries) add(rows_ - 1, c, v);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  }
  return t;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw ContractViolation("matrix shapes do not compose");
  SparseMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (const auto& [k, av] : a.data_[r]) {
      for (const auto& [c, bv] : b.data_[k]) out.add(r, c, av * bv);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void make_primitive(RowEchelon::IntRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y on sparse rows sharing their leading column; the result has that
// column cancelled.
RowEchelon::IntRow combine(const mpz_class& a, const RowEchelon::IntRow& x, const mpz_class& b,
                           const RowEchelon::IntRow& y) {
  RowEchelon::IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      mpz_class v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

std::size_t bit_weight(const RowEchelon::IntRow& row) {
  std::size_t bits = 0;
  for (const auto& [c, v] : row) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  return bits;
}

}  // namespace

RowEchelon::IntRow RowEchelon::to_integer_row(const std::map<std::size_t, Rational>& row) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    if (v == 0) continue;
    mpz_class scaled = v.get_num() * (l / v.get_den());
    out.emplace_back(c, std::move(scaled));
  }
  make_primitive(out);
  return out;
}

RowEchelon::IntRow RowEchelon::reduce(IntRow row) const {
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) break;
    const IntRow& pivot = it->second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), pivot.front().second.get_mpz_t(), row.front().second.get_mpz_t());
    mpz_class a = pivot.front().second / g;
    mpz_class b = row.front().second / g;
    row = combine(a, row, b, pivot);
    make_primitive(row);
  }
  return row;
}

bool RowEchelon::insert(IntRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  std::size_t lead = row.front().first;
  pivots_.emplace(lead, std::move(row));
  return true;
}

bool RowEchelon::insert(const std::map<std::size_t, Rational>& row) {
  return insert(to_integer_row(row));
}

bool RowEchelon::reduces_to_zero(const std::map<std::size_t, Rational>& row) const {
  return reduce(to_integer_row(row)).empty();
}

std::size_t rank(const SparseMatrix& m) {
  std::vector<RowEchelon::IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!m.row(r).empty()) rows.push_back(RowEchelon::to_integer_row(m.row(r)));
  }
  // Cheapest pivots first: short rows with small entries.
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return bit_weight(a) < bit_weight(b);
  });
  RowEchelon ech;
  for (auto& row : rows) ech.insert(std::move(row));
  return ech.rank();
}

std::size_t homology_dimension(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_out.cols() != d_in.rows()) {
    throw ContractViolation("d_out columns do not match d_in rows");
  }
  if (!(d_out * d_in).is_zero()) throw ContractViolation("d_out * d_in != 0");
  std::size_t ro = rank(d_out);
  std::size_t ri = rank(d_in);
  return d_out.cols() - ro - ri;
}

bool in_row_span(const SparseMatrix& m, const std::map<std::size_t, Rational>& v) {
  bool zero = std::all_of(v.begin(), v.end(), [](const auto& kv) { return kv.second == 0; });
  if (zero) return true;
  RowEchelon ech;
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  return ech.reduces_to_zero(v);
}

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) out << r << ' ' << c << ' ' << to_string(v) << '\n';
  }
}

SparseMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw LoadError("matrix dump: bad header");
  SparseMatrix m(rows, cols);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::size_t r = 0, c = 0;
    std::string value;
    if (!(in >> r >> c >> value)) throw LoadError("matrix dump: truncated entry list");
    if (r >= rows || c >= cols) throw LoadError("matrix dump: entry out of range");
    try {
      m.add(r, c, parse_rational(value));
    } catch (const ArgumentError& e) {
      throw LoadError(std::string("matrix dump: ") + e.what());
    }
  }
  return m;
}

}  // namespace pgc
