#include "pgc/basis_cache.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pgc/errors.hpp"
#include "pgc/interchange.hpp"

namespace pgc {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::projective_based:
      return "based";
    case BasisKind::projective_all:
      return "projective";
    case BasisKind::kontsevich:
      return "kontsevich";
  }
  return "unknown";
}

int edges_for(BasisKind kind, int degree, int m) {
  return kind == BasisKind::kontsevich ? degree + 2 * m : degree + 3 * m;
}

double enumeration_cost(int n, BasisKind kind, int m, int edge_count) {
  int v = n + m;
  int pool = v * (v - 1) / 2;
  int k = edge_count;
  if (kind == BasisKind::projective_based) {
    pool -= m;
    k -= m;
  }
  if (k < 0 || k > pool) return 0;
  return std::exp(std::lgamma(pool + 1.0) - std::lgamma(k + 1.0) - std::lgamma(pool - k + 1.0));
}

BasisCache::BasisCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string BasisCache::file_name(const std::vector<Label>& labels, BasisKind kind, int degree,
                                  int m) const {
  std::ostringstream out;
  out << to_string(kind) << "_V";
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "-" : "") << labels[i];
  out << "_d" << degree << "_m" << m << ".json";
  return out.str();
}

void BasisCache::load_manifest() {
  if (manifest_loaded_) return;
  manifest_loaded_ = true;
  auto path = dir_ / "manifest.json";
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format_version").get<int>() != kCacheFormatVersion) {
      throw LoadError("cache manifest has an unsupported format version");
    }
    for (const auto& [name, count] : j.at("files").items()) {
      manifest_[name] = count.get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("cache manifest ") + path.string() + ": " + e.what());
  }
}

void BasisCache::store_manifest() const {
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [name, count] : manifest_) files[name] = count;
  nlohmann::json j{{"format_version", kCacheFormatVersion}, {"files", files}};
  auto tmp = dir_ / "manifest.json.tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, dir_ / "manifest.json");
}

std::vector<CanonicalGraph> BasisCache::block(const std::vector<Label>& labels, BasisKind kind,
                                              int degree, int m) {
  const int edges = edges_for(kind, degree, m);
  if (!enabled()) return enumerate_basis(labels, m, edges, kind);

  const std::string name = file_name(labels, kind, degree, m);
  const auto path = dir_ / name;
  std::unique_lock lock(mutex_);
  std::filesystem::create_directories(dir_);
  load_manifest();
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::vector<CanonicalGraph> graphs;
    try {
      nlohmann::json j = nlohmann::json::parse(in);
      if (j.at("format_version").get<int>() != kCacheFormatVersion) {
        throw LoadError("cache file " + name + " has an unsupported format version");
      }
      if (j.at("externals").get<std::vector<Label>>() != labels ||
          j.at("kind").get<std::string>() != to_string(kind) ||
          j.at("degree").get<int>() != degree || j.at("internal_count").get<int>() != m) {
        throw LoadError("cache file " + name + " describes a different block");
      }
      for (const auto& rec : j.at("graphs")) {
        SignedCanonicalGraph g = graph_from_json(rec);
        if (g.sign != 1) throw LoadError("cache file " + name + " holds a signed record");
        graphs.push_back(std::move(g.graph));
      }
      if (j.at("count").get<std::size_t>() != graphs.size()) {
        throw LoadError("cache file " + name + " count does not match its records");
      }
    } catch (const nlohmann::json::exception& e) {
      throw LoadError("cache file " + name + ": " + e.what());
    }
    auto listed = manifest_.find(name);
    if (listed != manifest_.end() && listed->second != graphs.size()) {
      throw LoadError("cache file " + name + " disagrees with the manifest");
    }
    if (!std::is_sorted(graphs.begin(), graphs.end())) {
      throw LoadError("cache file " + name + " is not sorted");
    }
    return graphs;
  }

  // Enumeration runs unlocked so several blocks can be built at once.
  lock.unlock();
  std::vector<CanonicalGraph> graphs = enumerate_basis(labels, m, edges, kind);
  nlohmann::json records = nlohmann::json::array();
  for (const auto& g : graphs) records.push_back(graph_to_json({g, 1}));
  nlohmann::json j{{"format_version", kCacheFormatVersion},
                   {"externals", labels},
                   {"kind", to_string(kind)},
                   {"degree", degree},
                   {"internal_count", m},
                   {"count", graphs.size()},
                   {"graphs", records}};
  lock.lock();
  auto tmp = dir_ / (name + ".tmp");
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
  manifest_[name] = graphs.size();
  store_manifest();
  return graphs;
}

}  // namespace pgc
