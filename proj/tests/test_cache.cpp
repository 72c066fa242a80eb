#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "kwlab/cache.hpp"

using namespace kwlab;

TEST_CASE("cache put and get") {
  ResultCache cache;  // in-memory
  CHECK_FALSE(cache.get(42, "cc").has_value());
  cache.put(42, "cc", 3);
  REQUIRE(cache.get(42, "cc").has_value());
  CHECK(*cache.get(42, "cc") == 3);
  CHECK_FALSE(cache.get(42, "size").has_value());
}

TEST_CASE("cache persistence and version filtering") {
  std::string path = "kwlab_cache_test.txt";
  std::remove(path.c_str());
  {
    ResultCache cache(path);
    cache.put(1, "cc", 2);
    cache.put(2, "size", 7);
  }
  {
    std::ofstream out(path, std::ios::app);
    out << "3 cc 9 " << (kSolverVersion + 1) << "\n";  // stale version
    out << "garbage line\n";
  }
  ResultCache reloaded(path);
  CHECK(reloaded.size() == 2);
  CHECK(reloaded.dropped() == 2);
  CHECK(*reloaded.get(1, "cc") == 2);
  CHECK_FALSE(reloaded.get(3, "cc").has_value());
  std::remove(path.c_str());
}

TEST_CASE("cache verification") {
  ResultCache cache;
  for (int i = 0; i < 100; ++i) cache.put(i, "cc", i * i);
  auto rep = cache.verify(
      [](std::uint64_t h, const std::string&) {
        return std::optional<long long>((long long)h * (long long)h);
      },
      1.0);
  CHECK(rep.checked == 100);
  CHECK(rep.mismatched == 0);

  auto bad = cache.verify(
      [](std::uint64_t, const std::string&) { return std::optional<long long>(-1); }, 1.0);
  CHECK(bad.mismatched == 100);
}
