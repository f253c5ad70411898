#include "pgc/verify.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "pgc/arnold.hpp"
#include "pgc/boundary_forms.hpp"
#include "pgc/cooperad.hpp"
#include "pgc/errors.hpp"

namespace pgc {

namespace {

std::string tuple_text(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

ReportRow row(std::string suite, std::string parameter, std::string expected, std::string actual,
              bool pass) {
  return {std::move(suite), std::move(parameter), std::move(expected), std::move(actual),
          pass ? Status::pass : Status::fail};
}

/// Row comparing a failure count against zero.
ReportRow zero_row(const std::string& suite, const std::string& parameter, std::size_t failures,
                   std::size_t checked) {
  return row(suite, parameter, "0 failures", std::to_string(failures) + " failures of " +
                                                  std::to_string(checked),
             failures == 0);
}

std::string nm(int n, int m) { return "n=" + std::to_string(n) + " M=" + std::to_string(m); }

template <class F>
void for_each_graph(const GradedBasis& b, F&& f) {
  for (int d = b.min_degree(); d <= b.max_degree(); ++d) {
    for (const auto& g : b.slice(d)) f(g);
  }
}

std::vector<std::map<Label, Label>> generators(int n) {
  std::vector<std::map<Label, Label>> out;
  if (n < 2) return out;
  std::map<Label, Label> swap01, cycle;
  for (Label i = 0; i < n; ++i) {
    swap01[i] = i;
    cycle[i] = (i + 1) % n;
  }
  std::swap(swap01[0], swap01[1]);
  out.push_back(swap01);
  if (n > 2) out.push_back(cycle);
  return out;
}

std::vector<std::pair<std::vector<Label>, std::vector<Label>>> two_block_partitions(
    const std::vector<Label>& labels) {
  std::vector<std::pair<std::vector<Label>, std::vector<Label>>> out;
  const int n = static_cast<int>(labels.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<Label> I, J;
    for (int i = 0; i < n; ++i) (mask >> i & 1 ? I : J).push_back(labels[i]);
    out.emplace_back(std::move(I), std::move(J));
  }
  return out;
}

std::vector<Label> sorted_with(std::vector<Label> v, Label extra) {
  v.push_back(extra);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Label> merged(std::vector<Label> a, const std::vector<Label>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

/// Coordinates of cohomology classes in the normal monomial basis.
class CohCoordinates {
 public:
  explicit CohCoordinates(const std::vector<Label>& labels) {
    for (const auto& layer : normal_basis(labels)) {
      for (const auto& m : layer) index_.emplace(m, index_.size());
    }
  }
  std::map<std::size_t, Rational> operator()(const CohClass& c) const {
    std::map<std::size_t, Rational> v;
    for (const auto& [m, q] : c.terms()) v[index_.at(m)] = q;
    return v;
  }

 private:
  std::map<OmegaEtaMonomial, std::size_t> index_;
};

std::string describe_alpha(const AlphaPolynomial& p) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [word, c] : p) {
    out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    Rational a = abs(c);
    std::string sep;
    if (a != 1 || word.empty()) {
      out << to_string(a);
      sep = " ";
    }
    for (const auto& [p1, q1] : word) {
      out << sep << 'a' << p1 << q1;
      sep = " ";
    }
    first = false;
  }
  return first ? "0" : out.str();
}

/// Brute-force count of permutations of n points by number of cycles.
std::vector<std::size_t> permutations_by_cycles(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> by_degree(std::max(n, 1), 0);
  do {
    std::vector<char> seen(n, 0);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = perm[j]) seen[j] = 1;
    }
    by_degree[n - cycles]++;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return by_degree;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "PASS";
    case Status::fail:
      return "FAIL";
    case Status::info:
      return "INFO";
  }
  return "?";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "d2",       "pinwheel", "psi",          "filtration", "example",
      "homology", "equivariance", "cooperad", "presentation", "boundary",
      "head",     "porder",   "product"};
  return names;
}

void RunConfig::validate() const {
  if (arity < 1) throw ArgumentError("arity must be at least 1");
  if (max_internal < 0) throw ArgumentError("max-internal must be non-negative");
  if (degree_min && degree_max && *degree_min > *degree_max) {
    throw ArgumentError("degree range is empty");
  }
  if (format != "text" && format != "csv") throw ArgumentError("format must be text or csv");
  if (workers < 1) throw ArgumentError("workers must be at least 1");
  const auto& known = suite_names();
  for (const auto& s : suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ArgumentError("unknown suite: " + s);
    }
  }
}

bool RunConfig::degree_selected(int d) const {
  return (!degree_min || d >= *degree_min) && (!degree_max || d <= *degree_max);
}

std::vector<Label> label_range(int first, int count) {
  std::vector<Label> v(std::max(count, 0));
  std::iota(v.begin(), v.end(), first);
  return v;
}

double total_cost(int n, BasisKind kind, int max_internal) {
  double total = 0;
  for (int m = 0; m <= max_internal; ++m) {
    for (int e = 0; e <= max_edge_count(n, m, kind); ++e) total += enumeration_cost(n, kind, m, e);
  }
  return total;
}

void check_feasible(int n, BasisKind kind, int max_internal, double limit) {
  for (int m = 0; m <= max_internal; ++m) {
    for (int e = 0; e <= max_edge_count(n, m, kind); ++e) {
      double cost = enumeration_cost(n, kind, m, e);
      if (cost > limit) {
        int d = kind == BasisKind::kontsevich ? e - 2 * m : e - 3 * m;
        std::ostringstream msg;
        msg << "block (d=" << d << ", m=" << m << ") of the " << to_string(kind)
            << " basis on " << n << " externals would visit about " << std::setprecision(3)
            << cost << " edge sets (limit " << limit << ")";
        throw InfeasibleError(msg.str());
      }
    }
  }
}

Workspace::Workspace(const RunConfig& config)
    : cache_(config.cache_dir), workers_(std::max(config.workers, 1)) {}

const GradedBasis& Workspace::basis(const std::vector<Label>& labels, BasisKind kind,
                                    int max_internal) {
  auto key = std::make_tuple(labels, kind, max_internal);
  if (auto it = memo_.find(key); it != memo_.end()) return *it->second;
  const int n = static_cast<int>(labels.size());
  check_feasible(n, kind, max_internal);

  std::vector<std::pair<int, int>> jobs;  // (degree, m)
  for (int m = 0; m <= max_internal; ++m) {
    for (int e = 0; e <= max_edge_count(n, m, kind); ++e) {
      jobs.emplace_back(kind == BasisKind::kontsevich ? e - 2 * m : e - 3 * m, m);
    }
  }
  std::vector<std::vector<CanonicalGraph>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        results[i] = cache_.block(labels, kind, jobs[i].first, jobs[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(workers_, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  std::map<std::pair<int, int>, std::size_t> slot;
  for (std::size_t i = 0; i < jobs.size(); ++i) slot[jobs[i]] = i;
  auto loader = [&](int d, int m) { return std::move(results[slot.at({d, m})]); };
  auto basis = std::make_unique<GradedBasis>(labels, kind, max_internal, loader);
  return *memo_.emplace(key, std::move(basis)).first->second;
}

// ---------------------------------------------------------------------------
// Suites

std::vector<ReportRow> suite_d2(int n, int max_internal, Mode mode, Workspace& ws,
                                const RunConfig* filter) {
  std::vector<ReportRow> rows;
  const bool affine = mode == Mode::affine;
  const auto& b = affine ? ws.basis(label_range(1, n), BasisKind::kontsevich, max_internal)
                         : ws.basis(label_range(0, n), BasisKind::projective_based, max_internal);
  const Differential which = affine ? Differential::kontsevich : Differential::projective;
  const std::string tag = std::string(affine ? "affine " : "") + nm(n, max_internal);
  for (int d = b.min_degree(); d <= b.max_degree(); ++d) {
    if (filter && !filter->degree_selected(d)) continue;
    auto s0 = b.slice(d), s1 = b.slice(d + 1), s2 = b.slice(d + 2);
    if (s0.empty()) continue;
    SparseMatrix first = assemble_differential(s0, s1, which);
    SparseMatrix second = assemble_differential(s1, s2, which);
    std::size_t nnz = (second * first).nnz();
    rows.push_back(row("d2", tag + " d=" + std::to_string(d), "0 nonzero entries",
                       std::to_string(nnz) + " nonzero entries in " +
                           std::to_string(s2.size()) + "x" + std::to_string(s0.size()),
                       nnz == 0));
  }
  return rows;
}

std::vector<ReportRow> suite_pinwheel(int n, int max_internal, Workspace& ws) {
  std::vector<ReportRow> rows;
  const auto& b = ws.basis(label_range(0, n), BasisKind::projective_all, max_internal);
  for (int m = 1; m <= max_internal; ++m) {
    std::size_t bad = 0, total = 0;
    for (int d = b.min_degree(); d <= b.max_degree(); ++d) {
      for (const auto& g : b.block(d, m)) {
        for (VertexId v = n; v < n + m; ++v) {
          ++total;
          if (!reduce_to_based(pinwheel_vector(g, v)).empty()) ++bad;
        }
      }
    }
    rows.push_back(zero_row("pinwheel", "n=" + std::to_string(n) + " m=" + std::to_string(m),
                            bad, total));
  }
  return rows;
}

std::vector<ReportRow> suite_psi(int n, int max_internal, Workspace& ws) {
  std::vector<ReportRow> rows;
  const auto aff_labels = label_range(1, n - 1);
  const auto& k = ws.basis(aff_labels, BasisKind::kontsevich, max_internal);
  const auto& p = ws.basis(label_range(0, n), BasisKind::projective_based, max_internal);

  std::map<std::pair<int, int>, std::size_t> aff_count, proj_count;
  std::size_t round_trip_bad = 0, round_trip_total = 0;
  for (int m = 0; m <= max_internal; ++m) {
    for (int d = k.min_degree(); d <= k.max_degree(); ++d) {
      for (const auto& g : k.block(d, m)) {
        for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
          AffineElement x{g, {}};
          for (int i = 0; i < n - 1; ++i) {
            if (mask >> i & 1) x.eta.push_back(aff_labels[i]);
          }
          aff_count[{x.degree(), m}]++;
          ++round_trip_total;
          if (!(psi_inverse(psi(x)) == AffineChain(x, 1))) ++round_trip_bad;
        }
      }
    }
    for (int d = p.min_degree(); d <= p.max_degree(); ++d) {
      if (!p.block(d, m).empty()) proj_count[{d, m}] = p.block(d, m).size();
    }
  }
  std::set<std::pair<int, int>> keys;
  for (const auto& [key, c] : aff_count) keys.insert(key);
  for (const auto& [key, c] : proj_count) keys.insert(key);
  for (const auto& [d, m] : keys) {
    std::size_t a = aff_count.count({d, m}) ? aff_count.at({d, m}) : 0;
    std::size_t b = proj_count.count({d, m}) ? proj_count.at({d, m}) : 0;
    rows.push_back(row("psi",
                       "n=" + std::to_string(n) + " d=" + std::to_string(d) +
                           " m=" + std::to_string(m) + " count",
                       std::to_string(a), std::to_string(b), a == b));
  }
  rows.push_back(zero_row("psi", nm(n, max_internal) + " psi_inverse(psi(x)) == x",
                          round_trip_bad, round_trip_total));

  std::size_t back_bad = 0, back_total = 0;
  for_each_graph(p, [&](const CanonicalGraph& g) {
    ++back_total;
    if (!(psi(psi_inverse(Chain(g, 1))) == Chain(g, 1))) ++back_bad;
  });
  rows.push_back(
      zero_row("psi", nm(n, max_internal) + " psi(psi_inverse(b)) == b", back_bad, back_total));
  return rows;
}

std::vector<ReportRow> suite_filtration(int n, int max_internal, Workspace& ws) {
  const auto aff_labels = label_range(1, n - 1);
  const auto& k = ws.basis(aff_labels, BasisKind::kontsevich, max_internal);
  std::size_t bad = 0, total = 0;
  for_each_graph(k, [&](const CanonicalGraph& g) {
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
      AffineElement x{g, {}};
      for (int i = 0; i < n - 1; ++i) {
        if (mask >> i & 1) x.eta.push_back(aff_labels[i]);
      }
      Chain image = psi(x);
      const int level = filtration_level(image.begin()->first);
      // The leading parts agree up to the sign -1.
      Chain defect = d_proj(image) + psi(d_aff(AffineChain(x, 1)));
      ++total;
      for (const auto& [h, c] : defect) {
        if (filtration_level(h) <= level) {
          ++bad;
          break;
        }
      }
    }
  });
  return {zero_row("filtration",
                   nm(n, max_internal) + " d_proj(psi x) + psi(d_aff x) in higher filtration", bad,
                   total)};
}

std::vector<std::string> plus_graph_report(bool& ok) {
  const std::vector<Label> labels{0, 1, 2, 3};
  const SignedCanonicalGraph plus = canonicalize(OrientedGraph::from_edges(
      labels, 1, Mode::projective, {Edge(0, 4), Edge(1, 4), Edge(2, 4), Edge(3, 4)}));
  const Chain raw = d_proj_raw(plus.graph);
  const Chain d = d_proj(to_chain(plus));

  std::vector<std::string> lines;
  lines.push_back("gamma = " + describe(plus.graph) + " (sign " + std::to_string(plus.sign) + ")");
  lines.push_back("d(gamma): " + std::to_string(d.size()) + " terms");
  AlphaPolynomial image;
  for (const auto& [h, c] : d) {
    lines.push_back("  " + std::string(c < 0 ? "-" : "+") + to_string(abs(c)) + " " +
                    describe(h));
    AlphaWord word;
    for (const Edge& e : h.edges) word.emplace_back(h.externals[e.a], h.externals[e.b]);
    image += alpha_monomial(word, c);
  }
  const AlphaPolynomial relation = cyclic_arnold_relation(0, 1, 2, 3);
  const bool matches = image == relation || image == Rational(-1) * relation;
  const CohClass q = quotient_q(d, labels);
  lines.push_back("q(d gamma) in alpha generators: " + describe_alpha(image));
  lines.push_back("cyclic Arnold relation on (0,1,2,3): " + describe_alpha(relation));
  lines.push_back(std::string("q-image equals the cyclic Arnold relation: ") +
                  (matches ? "PASS" : "FAIL"));
  lines.push_back(std::string("q(d gamma) reduces to 0: ") + (q.is_zero() ? "PASS" : "FAIL"));
  ok = raw.size() == 12 && d.size() == 12 && matches && q.is_zero();
  return lines;
}

std::vector<ReportRow> suite_example() {
  const std::vector<Label> labels{0, 1, 2, 3};
  const SignedCanonicalGraph plus = canonicalize(OrientedGraph::from_edges(
      labels, 1, Mode::projective, {Edge(0, 4), Edge(1, 4), Edge(2, 4), Edge(3, 4)}));
  const Chain raw = d_proj_raw(plus.graph);
  const Chain d = d_proj(to_chain(plus));
  AlphaPolynomial image;
  for (const auto& [h, c] : d) {
    AlphaWord word;
    for (const Edge& e : h.edges) word.emplace_back(h.externals[e.a], h.externals[e.b]);
    image += alpha_monomial(word, c);
  }
  const AlphaPolynomial relation = cyclic_arnold_relation(0, 1, 2, 3);
  const CohClass q = quotient_q(d, labels);
  std::vector<ReportRow> rows;
  rows.push_back(row("example", "plus-graph raw terms", "12", std::to_string(raw.size()),
                     raw.size() == 12));
  rows.push_back(row("example", "plus-graph d terms", "12", std::to_string(d.size()),
                     d.size() == 12));
  rows.push_back(row("example", "plus-graph q-image vs cyclic Arnold relation", "equal up to sign",
                     image == relation                   ? "equal"
                     : image == Rational(-1) * relation ? "equal up to sign"
                                                         : "different",
                     image == relation || image == Rational(-1) * relation));
  rows.push_back(row("example", "plus-graph q(d gamma)", "0", describe(q), q.is_zero()));
  return rows;
}

std::map<int, std::size_t> affine_homology(int n, int max_internal, Workspace& ws) {
  const auto& k = ws.basis(label_range(1, n), BasisKind::kontsevich, max_internal);
  std::map<int, std::size_t> out;
  for (const auto& [d, h] : homology(k, Differential::kontsevich)) {
    for (int s = 0; s <= n; ++s) out[d + s] += h * binomial(n, s);
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<ReportRow> suite_homology(int n, int max_internal, Workspace& ws,
                                      const RunConfig* filter) {
  const bool affine = filter && filter->mode == Mode::affine;
  // Affine graphs on n labels resolve the framed space with n + 1 points.
  const auto betti = betti_table(affine ? n + 1 : n);
  const std::string tag = affine ? "affine n=" + std::to_string(n) : "n=" + std::to_string(n);
  std::vector<ReportRow> rows;
  std::map<int, std::size_t> previous;
  for (int M = 0; M <= max_internal; ++M) {
    auto h = affine ? affine_homology(n, M, ws)
                    : homology(ws.basis(label_range(0, n), BasisKind::projective_based, M),
                               Differential::projective);
    std::set<int> degrees;
    for (std::size_t d = 0; d < betti.size(); ++d) degrees.insert(static_cast<int>(d));
    for (const auto& [d, x] : h) {
      if (x) degrees.insert(d);
    }
    std::vector<std::size_t> column;
    for (int d : degrees) {
      if (filter && !filter->degree_selected(d)) continue;
      std::size_t expected = d >= 0 && d < static_cast<int>(betti.size()) ? betti[d] : 0;
      std::size_t actual = h.count(d) ? h.at(d) : 0;
      ReportRow r = row("homology", tag + " M=" + std::to_string(M) + " d=" + std::to_string(d),
                        std::to_string(expected), std::to_string(actual), expected == actual);
      // Only the deepest truncation is asserted; shallower ones trace the sequence.
      if (M < max_internal) r.status = Status::info;
      rows.push_back(r);
      if (M > 0) {
        std::size_t before = previous.count(d) ? previous.at(d) : 0;
        rows.push_back({"homology",
                        tag + " d=" + std::to_string(d) + " M=" + std::to_string(M - 1) + "->" +
                            std::to_string(M),
                        "stable", before == actual ? "stable" : "changed", Status::info});
      }
      column.push_back(actual);
    }
    rows.push_back({"homology", tag + " M=" + std::to_string(M) + " column", tuple_text(betti),
                    tuple_text(column), Status::info});
    previous = h;
  }
  return rows;
}

std::vector<ReportRow> suite_q_surjectivity(int n, Workspace& ws) {
  const auto labels = label_range(0, n);
  const auto betti = betti_table(n);
  const CohCoordinates coords(labels);
  std::vector<ReportRow> rows;
  // m = 0 graphs are cocycles: d only contracts edges at internal vertices.
  const auto& b0 = ws.basis(labels, BasisKind::projective_based, 0);
  for (std::size_t d = 0; d < betti.size(); ++d) {
    RowEchelon echelon;
    for (const auto& g : b0.block(static_cast<int>(d), 0)) {
      echelon.insert(coords(quotient_q(Chain(g, 1), labels)));
    }
    rows.push_back(row("homology",
                       "n=" + std::to_string(n) + " d=" + std::to_string(d) + " q-surjective",
                       std::to_string(betti[d]) + " = rank of q on m=0 cocycles",
                       std::to_string(echelon.rank()) + " of " +
                           std::to_string(b0.block(static_cast<int>(d), 0).size()) + " graphs",
                       echelon.rank() == betti[d]));
  }
  // q kills coboundaries, which all come from m = 1.
  const auto& b1 = ws.basis(labels, BasisKind::projective_based, 1);
  std::size_t bad = 0, total = 0;
  for (int d = b1.min_degree(); d <= b1.max_degree(); ++d) {
    for (const auto& g : b1.block(d, 1)) {
      ++total;
      if (!quotient_q(d_proj(Chain(g, 1)), labels).is_zero()) ++bad;
    }
  }
  rows.push_back(zero_row("homology", "n=" + std::to_string(n) + " q(d gamma) == 0 for m=1",
                          bad, total));
  return rows;
}

std::vector<ReportRow> suite_weight_homology(int n, int max_weight, DetachedRule rule) {
  const auto betti = betti_table(n);
  std::map<int, std::size_t> total;
  for (int w = 0; w <= max_weight; ++w) {
    auto b = GradedBasis::for_weight(label_range(0, n), BasisKind::projective_based, w, rule);
    for (const auto& [d, h] : homology(b, Differential::projective)) total[d] += h;
  }
  std::set<int> degrees;
  for (std::size_t d = 0; d < betti.size(); ++d) degrees.insert(static_cast<int>(d));
  for (const auto& [d, h] : total) {
    if (h) degrees.insert(d);
  }
  const std::string tag = "n=" + std::to_string(n) + " weight<=" + std::to_string(max_weight) +
                          (rule == DetachedRule::kill ? " detached=0" : "");
  std::vector<ReportRow> rows;
  for (int d : degrees) {
    std::size_t expected = d >= 0 && d < static_cast<int>(betti.size()) ? betti[d] : 0;
    std::size_t actual = total.count(d) ? total.at(d) : 0;
    rows.push_back(row("homology", tag + " d=" + std::to_string(d), std::to_string(expected),
                       std::to_string(actual), expected == actual));
  }
  return rows;
}

std::vector<ReportRow> suite_equivariance(int n, int max_internal, Workspace& ws) {
  const auto labels = label_range(0, n);
  const auto& b = ws.basis(labels, BasisKind::projective_all, max_internal);
  std::size_t d_bad = 0, q_bad = 0, total = 0;
  for (const auto& sigma : generators(n)) {
    for_each_graph(b, [&](const CanonicalGraph& g) {
      ++total;
      Chain x = reduce_to_based(Chain(g, 1));
      Chain moved = reduce_to_based(relabel(x, sigma));
      if (!(d_proj(moved) == reduce_to_based(relabel(d_proj(x), sigma)))) ++d_bad;
      if (!(quotient_q(moved, labels) == act(quotient_q(x, labels), sigma))) ++q_bad;
    });
  }
  return {zero_row("equivariance", nm(n, max_internal) + " d_proj commutes with sigma", d_bad,
                   total),
          zero_row("equivariance", nm(n, max_internal) + " q commutes with sigma", q_bad, total)};
}

std::vector<ReportRow> suite_cooperad(int n, int max_internal, Workspace& ws) {
  const auto labels = label_range(0, n);
  const auto& b = ws.basis(labels, BasisKind::projective_based, max_internal);
  const AuxLabels aux = default_aux(labels);
  std::size_t chain_bad = 0, comm_bad = 0, q_bad = 0, total = 0;
  std::size_t equi_bad = 0, equi_total = 0;
  std::size_t assoc_bad = 0, assoc_total = 0;
  for_each_graph(b, [&](const CanonicalGraph& g) {
    const Chain x(g, 1);
    const Chain dx = d_proj(x);
    const CohClass qx = quotient_q(x, labels);
    for (const auto& [I, J] : two_block_partitions(labels)) {
      ++total;
      TensorChain t = cocompose(x, I, J, aux);
      if (!(tensor_differential(t) == cocompose(dx, I, J, aux))) ++chain_bad;
      // Split the other way round, rename x <-> y, then swap the factors.
      std::map<Label, Label> left, right;
      for (Label l : J) left[l] = l;
      for (Label l : I) right[l] = l;
      left[aux.x] = aux.y;
      right[aux.y] = aux.x;
      if (!(tensor_swap(tensor_relabel(cocompose(x, J, I, aux), left, right)) == t)) ++comm_bad;
      if (!(quotient_q(t, sorted_with(I, aux.x), sorted_with(J, aux.y)) ==
            cocompose_cohomology(qx, I, J, aux))) {
        ++q_bad;
      }
      // A transposition inside one block commutes with the split.
      for (const auto* block : {&I, &J}) {
        if (block->size() < 2) continue;
        std::map<Label, Label> sigma, left_sigma, right_sigma;
        for (Label l : labels) sigma[l] = l;
        std::swap(sigma[(*block)[0]], sigma[(*block)[1]]);
        for (Label l : I) left_sigma[l] = sigma[l];
        for (Label l : J) right_sigma[l] = sigma[l];
        left_sigma[aux.x] = aux.x;
        right_sigma[aux.y] = aux.y;
        ++equi_total;
        Chain moved = reduce_to_based(relabel(x, sigma));
        if (!(cocompose(moved, I, J, aux) == tensor_relabel(t, left_sigma, right_sigma))) {
          ++equi_bad;
        }
      }
    }
    if (n < 3) return;
    // Coassociativity over ordered partitions I | J | K.
    const Label base = labels.back() + 1;
    const AuxLabels a1{base, base + 1}, a2{base + 2, base + 3};
    int combos = 1;
    for (int i = 0; i < n; ++i) combos *= 3;
    using Triple = std::tuple<CanonicalGraph, CanonicalGraph, CanonicalGraph>;
    for (int code = 0; code < combos; ++code) {
      std::vector<Label> I, J, K;
      for (int i = 0, c = code; i < n; ++i, c /= 3) (c % 3 == 0 ? I : c % 3 == 1 ? J : K).push_back(labels[i]);
      if (I.empty() || J.empty() || K.empty()) continue;
      ++assoc_total;
      LinComb<Triple> first_left, first_right;
      for (const auto& [key, c] : cocompose(x, I, merged(J, K), a1)) {
        for (const auto& [k2, c2] : cocompose(Chain(key.second, 1), sorted_with(J, a1.y), K, a2)) {
          first_left.add({key.first, k2.first, k2.second}, c * c2);
        }
      }
      for (const auto& [key, c] : cocompose(x, merged(I, J), K, a2)) {
        for (const auto& [k2, c2] : cocompose(Chain(key.first, 1), I, sorted_with(J, a2.x), a1)) {
          first_right.add({k2.first, k2.second, key.second}, c * c2);
        }
      }
      if (!(first_left == first_right)) ++assoc_bad;
    }
  });
  const std::string tag = nm(n, max_internal);
  return {zero_row("cooperad", tag + " cocompose is a chain map", chain_bad, total),
          zero_row("cooperad", tag + " cocommutativity", comm_bad, total),
          zero_row("cooperad", tag + " q-compatibility square", q_bad, total),
          zero_row("cooperad", tag + " coassociativity", assoc_bad, assoc_total),
          zero_row("cooperad", tag + " equivariance under block-preserving sigma", equi_bad,
                   equi_total)};
}

std::vector<ReportRow> suite_presentation(int max_n) {
  std::vector<ReportRow> rows;
  for (int n = 3; n <= max_n; ++n) {
    // omega generators live on 1..n, label 0 is the basepoint.
    const auto labels = label_range(0, n + 1);
    std::size_t bad = 0, total = 0;
    for (Label i = 1; i <= n; ++i) {
      for (Label j = 1; j <= n; ++j) {
        for (Label k = 1; k <= n; ++k) {
          if (i == j || j == k || i == k) continue;
          ++total;
          CohClass c(labels);
          c.add_word({Generator::omega(i, j), Generator::omega(j, k)}, 1);
          c.add_word({Generator::omega(j, k), Generator::omega(k, i)}, 1);
          c.add_word({Generator::omega(k, i), Generator::omega(i, j)}, 1);
          if (!c.is_zero()) ++bad;
        }
      }
    }
    rows.push_back(zero_row("presentation", "Arnold relations on " + std::to_string(n) + " points",
                            bad, total));
  }
  for (int n = 4; n <= max_n; ++n) {
    const auto labels = label_range(0, n);
    std::size_t bad = 0, total = 0;
    for (Label a : labels) {
      for (Label b : labels) {
        for (Label c : labels) {
          for (Label d : labels) {
            if (std::set<Label>{a, b, c, d}.size() != 4) continue;
            ++total;
            CohClass sum(labels);
            for (const auto& [word, q] : cyclic_arnold_relation(a, b, c, d)) {
              CohClass t = alpha_expand(word, labels);
              t *= q;
              sum += t;
            }
            if (!sum.is_zero()) ++bad;
          }
        }
      }
    }
    rows.push_back(zero_row("presentation",
                            "cyclic Arnold relations on " + std::to_string(n) + " labels", bad,
                            total));
  }
  for (int n = 1; n <= max_n; ++n) {
    auto oracle = permutations_by_cycles(n);
    auto betti = configuration_betti(n);
    std::size_t sum = std::accumulate(betti.begin(), betti.end(), std::size_t{0});
    std::size_t factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    rows.push_back(row("presentation", "H*(Conf_" + std::to_string(n) + ") by degree",
                       tuple_text(oracle), tuple_text(betti), oracle == betti));
    rows.push_back(row("presentation", "dim H*(Conf_" + std::to_string(n) + ")",
                       std::to_string(factorial), std::to_string(sum), sum == factorial));
  }
  for (int n = 1; n <= max_n; ++n) {
    // Framed space: configurations of n - 1 points times n - 1 circles.
    auto conf = permutations_by_cycles(n - 1);
    std::vector<std::size_t> expected(conf.size() + n - 1, 0);
    for (std::size_t d = 0; d < conf.size(); ++d) {
      for (int s = 0; s <= n - 1; ++s) expected[d + s] += conf[d] * binomial(n - 1, s);
    }
    auto betti = betti_table(n);
    rows.push_back(row("presentation", "framed Betti numbers n=" + std::to_string(n),
                       tuple_text(expected), tuple_text(betti), expected == betti));
  }
  return rows;
}

std::vector<ReportRow> suite_boundary(int vertex_count, int max_k) {
  std::vector<ReportRow> rows;
  const auto vertices = label_range(1, vertex_count);
  std::size_t bad = 0, total = 0;
  for (Label u : vertices) {
    for (Label v : vertices) {
      for (Label w : vertices) {
        for (Label x : vertices) {
          if (std::set<Label>{u, v, w, x}.size() != 4) continue;
          ++total;
          if (!check_key_relation(vertices, u, v, w, x)) ++bad;
        }
      }
    }
  }
  rows.push_back(zero_row("boundary",
                          "key relation, ordered 4-tuples of " + std::to_string(vertex_count) +
                              " vertices",
                          bad, total));
  for (int k = 1; k <= max_k; ++k) {
    auto defect = boundary_expansion_defect(k);
    rows.push_back(row("boundary", "expansion k=" + std::to_string(k), "0",
                       defect.empty() ? "0" : describe_alpha(defect), defect.empty()));
  }
  return rows;
}

std::vector<ReportRow> suite_head(int n, int max_internal, Workspace& ws) {
  const auto& b = ws.basis(label_range(0, n), BasisKind::projective_based, max_internal);
  std::size_t bad = 0, total = 0;
  for_each_graph(b, [&](const CanonicalGraph& g) {
    ++total;
    Chain x(g, 1);
    if (!(d_proj(x, HeadRule::larger_id) == d_proj(x, HeadRule::smaller_id))) ++bad;
  });
  return {zero_row("head", nm(n, max_internal) + " d_proj independent of head choice", bad,
                   total)};
}

std::vector<ReportRow> suite_porder(int n, int max_internal, Workspace& ws) {
  const auto& b = ws.basis(label_range(0, n), BasisKind::projective_all, max_internal);
  std::size_t bad = 0, total = 0;
  for_each_graph(b, [&](const CanonicalGraph& g) {
    ++total;
    Chain x(g, 1);
    if (!(reduce_to_based(x, POrder::ascending) == reduce_to_based(x, POrder::descending))) ++bad;
  });
  return {zero_row("porder", nm(n, max_internal) + " reduction independent of vertex order", bad,
                   total)};
}

std::vector<ReportRow> suite_product(int n, int max_internal, std::uint64_t seed,
                                     Workspace& ws) {
  const auto labels = label_range(0, n);
  const auto& b = ws.basis(labels, BasisKind::projective_based, max_internal);
  std::vector<CanonicalGraph> all;
  for_each_graph(b, [&](const CanonicalGraph& g) { all.push_back(g); });
  std::vector<ReportRow> rows;
  if (all.empty()) return rows;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  const std::size_t samples = 300;
  std::size_t comm_bad = 0, assoc_bad = 0, unit_bad = 0;
  const Chain unit(canonicalize(OrientedGraph::from_edges(labels, 0, Mode::projective, {})).graph,
                   1);
  for (std::size_t s = 0; s < samples; ++s) {
    const CanonicalGraph& a = all[pick(rng)];
    const CanonicalGraph& c = all[pick(rng)];
    const CanonicalGraph& e = all[pick(rng)];
    Chain x(a, 1), y(c, 1), z(e, 1);
    Chain xy = glue_product(x, y);
    Chain yx = glue_product(y, x);
    if ((a.degree() * c.degree()) % 2) yx *= -1;
    if (!(xy == yx)) ++comm_bad;
    if (!(glue_product(xy, z) == glue_product(x, glue_product(y, z)))) ++assoc_bad;
    if (!(glue_product(unit, x) == x)) ++unit_bad;
  }
  const std::string tag = nm(n, max_internal) + " seed=" + std::to_string(seed);
  rows.push_back(zero_row("product", tag + " graded commutativity", comm_bad, samples));
  rows.push_back(zero_row("product", tag + " associativity", assoc_bad, samples));
  rows.push_back(zero_row("product", tag + " unit", unit_bad, samples));
  return rows;
}

std::vector<ReportRow> run_suite(const std::string& name, const RunConfig& config,
                                 Workspace& ws) {
  const int n = config.arity, M = config.max_internal;
  if (name == "d2") return suite_d2(n, M, config.mode, ws, &config);
  if (name == "pinwheel") return suite_pinwheel(n, M, ws);
  if (name == "psi") return suite_psi(n, M, ws);
  if (name == "filtration") return suite_filtration(n, M, ws);
  if (name == "example") return suite_example();
  if (name == "homology") {
    auto rows = suite_homology(n, M, ws, &config);
    if (config.mode == Mode::projective) {
      auto q = suite_q_surjectivity(n, ws);
      rows.insert(rows.end(), q.begin(), q.end());
    }
    return rows;
  }
  if (name == "equivariance") return suite_equivariance(n, M, ws);
  if (name == "cooperad") return suite_cooperad(n, M, ws);
  if (name == "presentation") return suite_presentation(std::max(n, 6));
  if (name == "boundary") return suite_boundary(6, 5);
  if (name == "head") return suite_head(n, M, ws);
  if (name == "porder") return suite_porder(n, M, ws);
  if (name == "product") return suite_product(n, M, config.seed, ws);
  throw ArgumentError("unknown suite: " + name);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_report(std::ostream& out, const std::vector<ReportRow>& rows,
                  const std::string& format) {
  if (format == "csv") {
    out << "suite,parameter,expected,actual,status\n";
    for (const auto& r : rows) {
      out << csv_field(r.suite) << ',' << csv_field(r.parameter) << ',' << csv_field(r.expected)
          << ',' << csv_field(r.actual) << ',' << to_string(r.status) << '\n';
    }
    return;
  }
  std::string current;
  std::map<std::string, std::array<std::size_t, 3>> counts;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (r.suite != current) {
      current = r.suite;
      if (!counts.count(r.suite)) order.push_back(r.suite);
      out << "[" << r.suite << "]\n";
    }
    counts[r.suite][static_cast<int>(r.status)]++;
    out << "  " << to_string(r.status) << "  " << r.parameter << "\n"
        << "        expected: " << r.expected << "\n"
        << "        actual:   " << r.actual << "\n";
  }
  out << "summary\n";
  for (const auto& s : order) {
    const auto& c = counts[s];
    out << "  " << s << ": " << c[0] << " pass, " << c[1] << " fail, " << c[2] << " info\n";
  }
}

bool all_pass(const std::vector<ReportRow>& rows) {
  return std::none_of(rows.begin(), rows.end(),
                      [](const ReportRow& r) { return r.status == Status::fail; });
}

}  // namespace pgc
