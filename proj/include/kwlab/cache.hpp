#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kwlab/common.hpp"

namespace kwlab {

// Bumped whenever solver semantics change; cached values from other versions
// are ignored.
constexpr int kSolverVersion = 1;

struct CacheRecord {
  std::uint64_t hash = 0;  // content hash of the relation descriptor
  std::string measure;     // "cc", "size", ...
  long long value = 0;
  int version = kSolverVersion;
};

// Append-only result store, one whitespace-separated record per line.
// Records from other solver versions or unparsable lines are dropped on load.
class ResultCache {
 public:
  ResultCache() = default;
  explicit ResultCache(std::string path) : path_(std::move(path)) { load(); }

  std::optional<long long> get(std::uint64_t hash, const std::string& measure) const {
    auto it = entries_.find({hash, measure});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void put(std::uint64_t hash, const std::string& measure, long long value) {
    entries_[{hash, measure}] = value;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << hash << " " << measure << " " << value << " " << kSolverVersion << "\n";
  }

  // Recomputes a sample of entries and counts mismatches. The recompute
  // callback may return nullopt when it cannot rebuild the value (skipped).
  struct VerifyReport {
    std::size_t checked = 0, mismatched = 0, skipped = 0;
  };
  VerifyReport verify(
      const std::function<std::optional<long long>(std::uint64_t, const std::string&)>&
          recompute,
      double fraction = 0.01, unsigned seed = 1) const {
    VerifyReport rep;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const auto& [key, value] : entries_) {
      if (coin(rng) > fraction) continue;
      auto fresh = recompute(key.first, key.second);
      if (!fresh) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (*fresh != value) ++rep.mismatched;
    }
    return rep;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t dropped() const { return dropped_; }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      CacheRecord rec;
      if (!(ls >> rec.hash >> rec.measure >> rec.value >> rec.version)) {
        if (!line.empty()) ++dropped_;
        continue;
      }
      if (rec.version != kSolverVersion) {
        ++dropped_;
        continue;
      }
      entries_[{rec.hash, rec.measure}] = rec.value;
    }
  }

  std::string path_;
  std::map<std::pair<std::uint64_t, std::string>, long long> entries_;
  std::size_t dropped_ = 0;
};

}  // namespace kwlab
