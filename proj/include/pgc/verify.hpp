#pragma once

// Verification suites and reports shared by the command-line driver and the
// acceptance binary.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pgc/basis_cache.hpp"
#include "pgc/complexes.hpp"

namespace pgc {

struct RunConfig {
  int arity = 3;
  Mode mode = Mode::projective;
  int max_internal = 2;
  std::optional<int> degree_min;
  std::optional<int> degree_max;
  std::vector<std::string> suites;
  std::string format = "text";  // text | csv
  std::string out;
  std::string cache_dir;
  int workers = 1;
  std::uint64_t seed = 1;

  /// Throws ArgumentError on n < 1, M < 0, an empty degree range, an
  /// unknown format or suite, or workers < 1.
  void validate() const;
  bool degree_selected(int d) const;
};

enum class Status { pass, fail, info };

struct ReportRow {
  std::string suite;
  std::string parameter;
  std::string expected;
  std::string actual;
  Status status = Status::pass;
};

std::string to_string(Status s);

/// Bases shared across suites, built through the cache and a worker pool.
class Workspace {
 public:
  explicit Workspace(const RunConfig& config);

  const GradedBasis& basis(const std::vector<Label>& labels, BasisKind kind, int max_internal);
  int workers() const { return workers_; }

 private:
  BasisCache cache_;
  int workers_ = 1;
  std::map<std::tuple<std::vector<Label>, BasisKind, int>, std::unique_ptr<GradedBasis>> memo_;
};

std::vector<Label> label_range(int first, int count);

/// Throws InfeasibleError naming the first (degree, m) block whose
/// enumeration would visit more than `limit` edge sets.
void check_feasible(int n, BasisKind kind, int max_internal, double limit = 2e8);
/// Total number of edge sets the enumeration would visit.
double total_cost(int n, BasisKind kind, int max_internal);

const std::vector<std::string>& suite_names();
std::vector<ReportRow> run_suite(const std::string& name, const RunConfig& config, Workspace& ws);

// Individual suites, parameterized directly.
std::vector<ReportRow> suite_d2(int n, int max_internal, Mode mode, Workspace& ws,
                                const RunConfig* filter = nullptr);
std::vector<ReportRow> suite_pinwheel(int n, int max_internal, Workspace& ws);
std::vector<ReportRow> suite_psi(int n, int max_internal, Workspace& ws);
std::vector<ReportRow> suite_filtration(int n, int max_internal, Workspace& ws);
std::vector<ReportRow> suite_example();
std::vector<ReportRow> suite_homology(int n, int max_internal, Workspace& ws,
                                      const RunConfig* filter = nullptr);
std::vector<ReportRow> suite_q_surjectivity(int n, Workspace& ws);
std::vector<ReportRow> suite_weight_homology(int n, int max_weight, DetachedRule rule);
std::vector<ReportRow> suite_equivariance(int n, int max_internal, Workspace& ws);
std::vector<ReportRow> suite_cooperad(int n, int max_internal, Workspace& ws);
std::vector<ReportRow> suite_presentation(int max_n);
std::vector<ReportRow> suite_boundary(int vertex_count, int max_k);
std::vector<ReportRow> suite_head(int n, int max_internal, Workspace& ws);
std::vector<ReportRow> suite_porder(int n, int max_internal, Workspace& ws);
std::vector<ReportRow> suite_product(int n, int max_internal, std::uint64_t seed, Workspace& ws);
std::vector<ReportRow> suite_kontsevich(int n, int max_internal, Workspace& ws);

/// Affine complex homology from the Kontsevich part tensored with Lambda(eta).
std::map<int, std::size_t> affine_homology(int n, int max_internal, Workspace& ws);

/// Lines describing the plus-graph computation; `ok` reports the verdict.
std::vector<std::string> plus_graph_report(bool& ok);

void write_report(std::ostream& out, const std::vector<ReportRow>& rows, const std::string& format);
bool all_pass(const std::vector<ReportRow>& rows);

}  // namespace pgc
