#pragma once

// On-disk cache of basis blocks. One JSON file per (labels, kind, degree, m)
// holding graph records, plus manifest.json listing every file with its
// count and the format version.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pgc/complexes.hpp"

namespace pgc {

inline constexpr int kCacheFormatVersion = 1;

std::string to_string(BasisKind kind);

class BasisCache {
 public:
  /// An empty path disables the disk cache.
  explicit BasisCache(std::filesystem::path dir = {});

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  /// Cached block, or a fresh enumeration that is then stored. Throws
  /// LoadError when an existing file or the manifest is corrupt.
  std::vector<CanonicalGraph> block(const std::vector<Label>& labels, BasisKind kind, int degree,
                                    int m);

  std::string file_name(const std::vector<Label>& labels, BasisKind kind, int degree,
                        int m) const;

 private:
  void load_manifest();
  void store_manifest() const;

  std::filesystem::path dir_;
  std::map<std::string, std::size_t> manifest_;
  bool manifest_loaded_ = false;
  std::mutex mutex_;
};

/// Edge count of the graphs in block (degree, m).
int edges_for(BasisKind kind, int degree, int m);

/// Number of edge subsets the enumerator visits for a block.
double enumeration_cost(int n, BasisKind kind, int m, int edge_count);

}  // namespace pgc
