#ifndef CONDLAB_CONFIG_HPP
#define CONDLAB_CONFIG_HPP

#include <cstdint>
#include <cstdlib>
#include <string>

#include "condlab/error.hpp"

namespace condlab {

/// Enumeration caps and worker count. Flags override the environment
/// (CONDLAB_MAX_PROFILES, CONDLAB_THREADS), which overrides these defaults.
struct Limits {
  /// Upper bound on (m!)^n for anything that scans the full profile space.
  std::uint64_t max_profiles = 1'000'000;
  /// Upper bound on the node count of graph algorithms (BFS, components).
  std::uint64_t max_graph_profiles = 100'000;
  int threads = 1;

  static Limits from_env() {
    Limits limits;
    if (const char* v = std::getenv("CONDLAB_MAX_PROFILES"); v && *v) {
      limits.max_profiles = parse_count(v, "CONDLAB_MAX_PROFILES");
    }
    if (const char* v = std::getenv("CONDLAB_THREADS"); v && *v) {
      limits.threads = static_cast<int>(parse_count(v, "CONDLAB_THREADS"));
      if (limits.threads < 1) limits.threads = 1;
    }
    return limits;
  }

 private:
  static std::uint64_t parse_count(const char* text, const char* name) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text, &end, 10);
    if (end == text || *end != '\0') {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " is not a nonnegative integer");
    }
    return value;
  }
};

}  // namespace condlab

#endif  // CONDLAB_CONFIG_HPP
