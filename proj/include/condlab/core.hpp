#ifndef CONDLAB_CORE_HPP
#define CONDLAB_CORE_HPP

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condlab/error.hpp"

namespace condlab {

/// Letters a..z are the presentation names, so at most 26 alternatives; the
/// enumeration code space additionally requires m! to fit comfortably in 64 bits.
inline constexpr int kMaxAlternatives = 12;

struct Alternative {
  int index = 0;
  friend constexpr auto operator<=>(Alternative, Alternative) = default;
};

/// Voters are 0-based internally; text and JSON forms are 1-based.
struct Voter {
  int index = 0;
  friend constexpr auto operator<=>(Voter, Voter) = default;
};

inline char letter(Alternative x) { return static_cast<char>('a' + x.index); }

inline Alternative parse_alternative(std::string_view text, int m) {
  if (text.size() != 1 || text[0] < 'a' || text[0] >= 'a' + m) {
    throw Error(ErrorCode::InvalidAlternative,
                "'" + std::string(text) + "' is not one of the first " + std::to_string(m) + " letters");
  }
  return Alternative{text[0] - 'a'};
}

/// Bitset over alternatives; used for upper contour sets and SD cuts.
class AltSet {
 public:
  constexpr AltSet() = default;
  constexpr explicit AltSet(std::uint32_t bits) : bits_(bits) {}

  static AltSet all(int m) { return AltSet((m >= 32) ? ~0u : ((1u << m) - 1u)); }

  constexpr bool contains(Alternative x) const { return (bits_ >> x.index) & 1u; }
  constexpr void insert(Alternative x) { bits_ |= (1u << x.index); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }

  std::vector<Alternative> members() const {
    std::vector<Alternative> out;
    for (int k = 0; k < 32; ++k) {
      if ((bits_ >> k) & 1u) out.push_back(Alternative{k});
    }
    return out;
  }

  friend constexpr bool operator==(AltSet, AltSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

inline std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int k = 2; k <= m; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

/// (m!)^n, or nullopt when it does not fit in 63 bits.
inline std::optional<std::uint64_t> profile_space_size(int n, int m) {
  const std::uint64_t base = factorial(m);
  std::uint64_t total = 1;
  for (int k = 0; k < n; ++k) {
    if (total > (std::numeric_limits<std::uint64_t>::max() >> 1) / base) return std::nullopt;
    total *= base;
  }
  return total;
}

/// A strict total order, most-preferred first. Holds the order and its inverse.
class PreferenceRelation {
 public:
  PreferenceRelation() = default;

  explicit PreferenceRelation(std::vector<Alternative> order) : order_(std::move(order)) {
    const int m = static_cast<int>(order_.size());
    if (m < 1 || m > kMaxAlternatives) {
      throw Error(ErrorCode::InvalidArgument, "relation needs between 1 and " +
                                                  std::to_string(kMaxAlternatives) + " alternatives");
    }
    position_.assign(m, -1);
    for (int pos = 0; pos < m; ++pos) {
      const int x = order_[pos].index;
      if (x < 0 || x >= m || position_[x] != -1) {
        throw Error(ErrorCode::InvalidArgument, "order is not a permutation of 0..m-1");
      }
      position_[x] = pos;
    }
  }

  static PreferenceRelation identity(int m) {
    std::vector<Alternative> order(m);
    for (int k = 0; k < m; ++k) order[k] = Alternative{k};
    return PreferenceRelation(std::move(order));
  }

  /// Inverse of lex_rank(): the rank-th permutation in lexicographic order.
  static PreferenceRelation from_lex_rank(int m, std::uint64_t rank) {
    if (rank >= factorial(m)) throw Error(ErrorCode::InvalidArgument, "permutation rank out of range");
    std::vector<int> pool(m);
    for (int k = 0; k < m; ++k) pool[k] = k;
    std::vector<Alternative> order;
    order.reserve(m);
    for (int pos = 0; pos < m; ++pos) {
      const std::uint64_t block = factorial(m - 1 - pos);
      const auto digit = static_cast<std::size_t>(rank / block);
      rank %= block;
      order.push_back(Alternative{pool[digit]});
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return PreferenceRelation(std::move(order));
  }

  int size() const { return static_cast<int>(order_.size()); }
  std::span<const Alternative> order() const { return order_; }
  Alternative at(int pos) const { return order_.at(pos); }
  Alternative top() const { return order_.front(); }

  /// 0-based position; throws on an alternative outside [0, m).
  int position(Alternative x) const {
    if (x.index < 0 || x.index >= size()) {
      throw Error(ErrorCode::InvalidAlternative, "alternative index " + std::to_string(x.index) +
                                                     " outside [0," + std::to_string(size()) + ")");
    }
    return position_[x.index];
  }

  bool prefers(Alternative x, Alternative y) const { return position(x) < position(y); }

  /// Lexicographic rank via the Lehmer code.
  std::uint64_t lex_rank() const {
    const int m = size();
    std::uint64_t rank = 0;
    for (int pos = 0; pos < m; ++pos) {
      int smaller_later = 0;
      for (int later = pos + 1; later < m; ++later) {
        if (order_[later].index < order_[pos].index) ++smaller_later;
      }
      rank += static_cast<std::uint64_t>(smaller_later) * factorial(m - 1 - pos);
    }
    return rank;
  }

  /// The relation with positions pos and pos+1 exchanged.
  PreferenceRelation swapped_at(int pos) const {
    if (pos < 0 || pos + 1 >= size()) throw Error(ErrorCode::InvalidArgument, "swap position out of range");
    PreferenceRelation out = *this;
    std::swap(out.order_[pos], out.order_[pos + 1]);
    out.position_[out.order_[pos].index] = pos;
    out.position_[out.order_[pos + 1].index] = pos + 1;
    return out;
  }

  friend bool operator==(const PreferenceRelation& a, const PreferenceRelation& b) {
    return a.order_ == b.order_;
  }
  friend std::strong_ordering operator<=>(const PreferenceRelation& a, const PreferenceRelation& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<Alternative> order_;
  std::vector<int> position_;
};

/// The fixed extra relation appended as a virtual last voter.
struct TieBreaker {
  PreferenceRelation order;
  friend bool operator==(const TieBreaker&, const TieBreaker&) = default;
};

class Profile {
 public:
  Profile() = default;

  explicit Profile(std::vector<PreferenceRelation> relations) : relations_(std::move(relations)) {
    if (relations_.empty()) throw Error(ErrorCode::InvalidArgument, "a profile needs at least one voter");
    const int m = relations_.front().size();
    for (const auto& r : relations_) {
      if (r.size() != m) throw Error(ErrorCode::SizeMismatch, "voters rank different numbers of alternatives");
    }
  }

  int n() const { return static_cast<int>(relations_.size()); }
  int m() const { return relations_.empty() ? 0 : relations_.front().size(); }

  const PreferenceRelation& voter(Voter i) const {
    if (i.index < 0 || i.index >= n()) throw Error(ErrorCode::InvalidArgument, "voter index out of range");
    return relations_[i.index];
  }
  const PreferenceRelation& operator[](int i) const { return relations_[i]; }
  std::span<const PreferenceRelation> relations() const { return relations_; }

  Profile with_voter(Voter i, PreferenceRelation relation) const {
    if (relation.size() != m()) throw Error(ErrorCode::SizeMismatch, "replacement relation has wrong size");
    Profile out = *this;
    out.relations_.at(i.index) = std::move(relation);
    return out;
  }

  /// Mixed-radix code with voter 1 most significant; numeric order equals the
  /// canonical (Lehmer-lexicographic) profile order.
  std::uint64_t code() const {
    if (!profile_space_size(n(), m())) throw Error(ErrorCode::CapExceeded, "profile space too large to index");
    const std::uint64_t base = factorial(m());
    std::uint64_t c = 0;
    for (const auto& r : relations_) c = c * base + r.lex_rank();
    return c;
  }

  static Profile from_code(int n, int m, std::uint64_t code) {
    const std::uint64_t base = factorial(m);
    std::vector<PreferenceRelation> rel(n);
    for (int i = n - 1; i >= 0; --i) {
      rel[i] = PreferenceRelation::from_lex_rank(m, code % base);
      code /= base;
    }
    if (code != 0) throw Error(ErrorCode::InvalidArgument, "profile code out of range");
    return Profile(std::move(rel));
  }

  friend bool operator==(const Profile&, const Profile&) = default;
  friend std::strong_ordering operator<=>(const Profile& a, const Profile& b) {
    return a.relations_ <=> b.relations_;
  }

 private:
  std::vector<PreferenceRelation> relations_;
};

// ---------------------------------------------------------------------------
// Elementary operations

/// 1-based rank; 1 means most preferred.
inline int rank(const PreferenceRelation& pref, Alternative x) { return pref.position(x) + 1; }

/// U(pref, x): x together with everything ranked above it.
inline AltSet upper_contour(const PreferenceRelation& pref, Alternative x) {
  AltSet out;
  const int r = rank(pref, x);
  for (int pos = 0; pos < r; ++pos) out.insert(pref.at(pos));
  return out;
}

/// The top-k prefix of a relation (k in [0, m]).
inline AltSet top_set(const PreferenceRelation& pref, int k) {
  AltSet out;
  for (int pos = 0; pos < k; ++pos) out.insert(pref.at(pos));
  return out;
}

inline void require_alternative(const Profile& profile, Alternative x) {
  if (x.index < 0 || x.index >= profile.m()) {
    throw Error(ErrorCode::InvalidAlternative, "alternative index " + std::to_string(x.index) + " out of range");
  }
}

/// g_R(x, y) = #{i : x >_i y} - #{i : y >_i x}.
inline int majority_margin(const Profile& profile, Alternative x, Alternative y) {
  require_alternative(profile, x);
  require_alternative(profile, y);
  if (x == y) throw Error(ErrorCode::InvalidArgument, "majority margin needs distinct alternatives");
  int g = 0;
  for (const auto& r : profile.relations()) g += r.prefers(x, y) ? 1 : -1;
  return g;
}

inline std::optional<Alternative> condorcet_winner(const Profile& profile) {
  const int m = profile.m();
  for (int a = 0; a < m; ++a) {
    bool beats_all = true;
    for (int b = 0; b < m && beats_all; ++b) {
      if (a != b && majority_margin(profile, Alternative{a}, Alternative{b}) <= 0) beats_all = false;
    }
    if (beats_all) return Alternative{a};
  }
  return std::nullopt;
}

/// R^{i:yx}: voter i swaps x and y, which must be adjacent with x directly above y.
inline Profile swap(const Profile& profile, Voter i, Alternative x, Alternative y) {
  const auto& pref = profile.voter(i);
  const int px = pref.position(x);
  const int py = pref.position(y);
  if (py == px - 1) throw Error(ErrorCode::NonAdjacentSwap, "wrong orientation: y is directly above x");
  if (py != px + 1) throw Error(ErrorCode::NonAdjacentSwap, "x and y are not adjacent in the voter's relation");
  return profile.with_voter(i, pref.swapped_at(px));
}

inline bool pareto_dominates(const Profile& profile, Alternative x, Alternative y) {
  require_alternative(profile, x);
  require_alternative(profile, y);
  if (x == y) throw Error(ErrorCode::InvalidArgument, "Pareto dominance needs distinct alternatives");
  for (const auto& r : profile.relations()) {
    if (!r.prefers(x, y)) return false;
  }
  return true;
}

/// (R, tb): the tie-breaker appended as voter n+1.
inline Profile augment(const Profile& profile, const TieBreaker& tb) {
  if (tb.order.size() != profile.m()) throw Error(ErrorCode::SizeMismatch, "tie-breaker ranks a different m");
  std::vector<PreferenceRelation> rel(profile.relations().begin(), profile.relations().end());
  rel.push_back(tb.order);
  return Profile(std::move(rel));
}

// ---------------------------------------------------------------------------
// Text form: one voter per line, "a>b>c"; '#' comments and blank lines ignored.

inline std::string to_string(const PreferenceRelation& pref) {
  std::string out;
  for (int pos = 0; pos < pref.size(); ++pos) {
    if (pos) out += '>';
    out += letter(pref.at(pos));
  }
  return out;
}

inline std::string to_string(const Profile& profile) {
  std::string out;
  for (const auto& r : profile.relations()) {
    out += to_string(r);
    out += '\n';
  }
  return out;
}

/// Single-line form used in JSON witnesses: "a>b>c,b>c>a,c>a>b".
inline std::string to_inline_string(const Profile& profile) {
  std::string out;
  for (int i = 0; i < profile.n(); ++i) {
    if (i) out += ',';
    out += to_string(profile[i]);
  }
  return out;
}

inline PreferenceRelation parse_relation(std::string_view text) {
  std::vector<Alternative> order;
  std::size_t start = 0;
  while (true) {
    const auto sep = text.find('>', start);
    auto token = text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
      token.remove_suffix(1);
    }
    if (token.size() != 1 || token[0] < 'a' || token[0] > 'z') {
      throw Error(ErrorCode::Parse, "bad alternative '" + std::string(token) + "' in '" + std::string(text) + "'");
    }
    order.push_back(Alternative{token[0] - 'a'});
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  try {
    return PreferenceRelation(std::move(order));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, "'" + std::string(text) + "' is not a strict order over the first m letters");
  }
}

/// Meaningful lines of a text block (comments stripped, blanks dropped).
inline std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
  }
  return lines;
}

inline Profile parse_profile(std::string_view text) {
  std::vector<PreferenceRelation> rel;
  for (const auto& line : content_lines(text)) rel.push_back(parse_relation(line));
  if (rel.empty()) throw Error(ErrorCode::Parse, "profile text contains no voters");
  try {
    return Profile(std::move(rel));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

/// Several n-voter profiles in one block: consecutive groups of n voter lines.
inline std::vector<Profile> parse_profiles(std::string_view text, int n) {
  const auto lines = content_lines(text);
  if (n < 1 || lines.size() % static_cast<std::size_t>(n) != 0) {
    throw Error(ErrorCode::Parse, std::to_string(lines.size()) + " voter lines do not split into " +
                                      std::to_string(n) + "-voter profiles");
  }
  std::vector<Profile> out;
  for (std::size_t start = 0; start < lines.size(); start += static_cast<std::size_t>(n)) {
    std::vector<PreferenceRelation> rel;
    for (int i = 0; i < n; ++i) rel.push_back(parse_relation(lines[start + static_cast<std::size_t>(i)]));
    out.emplace_back(std::move(rel));
  }
  return out;
}

/// Builds a relation from a leading sequence; the remaining alternatives follow in index order.
inline PreferenceRelation relation_with_prefix(int m, std::initializer_list<int> prefix) {
  std::vector<Alternative> order;
  std::vector<bool> used(m, false);
  for (int x : prefix) {
    order.push_back(Alternative{x});
    used.at(x) = true;
  }
  for (int x = 0; x < m; ++x) {
    if (!used[x]) order.push_back(Alternative{x});
  }
  return PreferenceRelation(std::move(order));
}

}  // namespace condlab

#endif  // CONDLAB_CORE_HPP
