#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "condlab/condlab.hpp"

namespace condlab::fixtures {

inline Alternative alt(char c) { return Alternative{c - 'a'}; }

inline AltSet set_of(std::string_view letters) {
  AltSet s;
  for (char c : letters) s.insert(alt(c));
  return s;
}

inline Profile prof(std::initializer_list<const char*> lines) {
  std::vector<PreferenceRelation> rel;
  for (const char* l : lines) rel.push_back(parse_relation(l));
  return Profile(std::move(rel));
}

inline Profile random_profile(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<std::uint64_t> pick(0, factorial(m) - 1);
  std::vector<PreferenceRelation> rel;
  for (int i = 0; i < n; ++i) rel.push_back(PreferenceRelation::from_lex_rank(m, pick(rng)));
  return Profile(std::move(rel));
}

inline Lottery random_lottery(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<long> w(0, 9);
  while (true) {
    std::vector<long> raw(m);
    long total = 0;
    for (auto& x : raw) total += (x = w(rng));
    if (total == 0) continue;
    std::vector<Rational> probs;
    for (long x : raw) probs.push_back(make_rational(x, total));
    return Lottery(std::move(probs));
  }
}

/// Brute-force Condorcet winner straight from pairwise counts.
inline int naive_condorcet_winner(const Profile& p) {
  for (int x = 0; x < p.m(); ++x) {
    bool beats_all = true;
    for (int y = 0; y < p.m() && beats_all; ++y) {
      if (x == y) continue;
      int for_x = 0;
      for (int i = 0; i < p.n(); ++i) for_x += p[i].prefers(Alternative{x}, Alternative{y}) ? 1 : 0;
      beats_all = 2 * for_x > p.n();
    }
    if (beats_all) return x;
  }
  return -1;
}

}  // namespace condlab::fixtures
