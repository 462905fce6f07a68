#ifndef CONDLAB_DOMAINS_HPP
#define CONDLAB_DOMAINS_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "condlab/config.hpp"
#include "condlab/core.hpp"

namespace condlab {

/// A membership-testable, enumerable set of n-voter profiles over m alternatives.
class DomainSpec {
 public:
  enum class Kind { Full, Condorcet, CondorcetFor, TieBreakingCondorcet, Extended, Explicit };

  static DomainSpec full(int n, int m) { return DomainSpec(Kind::Full, n, m); }
  static DomainSpec condorcet(int n, int m) { return DomainSpec(Kind::Condorcet, n, m); }

  static DomainSpec condorcet_for(int n, int m, Alternative x) {
    if (x.index < 0 || x.index >= m) throw Error(ErrorCode::InvalidAlternative, "winner outside [0,m)");
    DomainSpec d(Kind::CondorcetFor, n, m);
    d.winner_ = x;
    return d;
  }

  /// Constructible for any n; only even n gives a superset of the Condorcet domain.
  static DomainSpec tie_breaking(int n, TieBreaker tb) {
    DomainSpec d(Kind::TieBreakingCondorcet, n, tb.order.size());
    d.tie_breaker_ = std::move(tb);
    return d;
  }

  /// base plus extra profiles; extras must lie outside base.
  static DomainSpec extended(const DomainSpec& base, std::vector<Profile> extras);

  static DomainSpec explicit_set(int n, int m, std::vector<Profile> profiles) {
    DomainSpec d(Kind::Explicit, n, m);
    for (const auto& p : profiles) d.check_shape(p);
    d.profiles_ = normalize(std::move(profiles));
    return d;
  }

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int m() const { return m_; }

  const DomainSpec& base() const {
    if (!base_) throw Error(ErrorCode::InvalidArgument, "domain has no base");
    return *base_;
  }
  /// Extras of an Extended domain or members of an Explicit one, sorted canonically.
  const std::vector<Profile>& profiles() const { return profiles_; }
  Alternative winner() const { return winner_.value(); }
  const TieBreaker& tie_breaker() const { return tie_breaker_.value(); }

  bool in_listed_profiles(const Profile& p) const { return std::binary_search(profiles_.begin(), profiles_.end(), p); }

  void check_shape(const Profile& p) const {
    if (p.n() != n_ || p.m() != m_) {
      throw Error(ErrorCode::SizeMismatch, "profile is " + std::to_string(p.n()) + "x" + std::to_string(p.m()) +
                                               ", domain is " + std::to_string(n_) + "x" + std::to_string(m_));
    }
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Full: return "full";
      case Kind::Condorcet: return "condorcet";
      case Kind::CondorcetFor: return std::string("condorcet-for:") + letter(*winner_);
      case Kind::TieBreakingCondorcet: return "tb-condorcet:" + to_string(tie_breaker_->order);
      case Kind::Extended:
        return base_->describe() + "+" + std::to_string(profiles_.size()) + " extra profile(s)";
      case Kind::Explicit: return "explicit(" + std::to_string(profiles_.size()) + " profiles)";
    }
    return "?";
  }

  friend bool operator==(const DomainSpec& a, const DomainSpec& b) {
    if (a.kind_ != b.kind_ || a.n_ != b.n_ || a.m_ != b.m_ || a.winner_ != b.winner_ ||
        a.tie_breaker_ != b.tie_breaker_ || a.profiles_ != b.profiles_) {
      return false;
    }
    if (static_cast<bool>(a.base_) != static_cast<bool>(b.base_)) return false;
    return !a.base_ || *a.base_ == *b.base_;
  }

 private:
  DomainSpec(Kind kind, int n, int m) : kind_(kind), n_(n), m_(m) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one voter");
    if (m < 1 || m > kMaxAlternatives) {
      throw Error(ErrorCode::InvalidArgument, "m must lie in [1," + std::to_string(kMaxAlternatives) + "]");
    }
  }

  static std::vector<Profile> normalize(std::vector<Profile> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  Kind kind_;
  int n_;
  int m_;
  std::optional<Alternative> winner_;
  std::optional<TieBreaker> tie_breaker_;
  std::shared_ptr<const DomainSpec> base_;
  std::vector<Profile> profiles_;
};

/// Winner used by Condorcet-style domains: the Condorcet winner, or the
/// Condorcet winner of (R, tb) for tie-breaking domains.
inline std::optional<Alternative> tie_broken_winner(const Profile& profile, const TieBreaker& tb) {
  return condorcet_winner(augment(profile, tb));
}

inline bool contains(const DomainSpec& dom, const Profile& profile) {
  dom.check_shape(profile);
  switch (dom.kind()) {
    case DomainSpec::Kind::Full: return true;
    case DomainSpec::Kind::Condorcet: return condorcet_winner(profile).has_value();
    case DomainSpec::Kind::CondorcetFor: return condorcet_winner(profile) == dom.winner();
    case DomainSpec::Kind::TieBreakingCondorcet:
      return tie_broken_winner(profile, dom.tie_breaker()).has_value();
    case DomainSpec::Kind::Extended: return contains(dom.base(), profile) || dom.in_listed_profiles(profile);
    case DomainSpec::Kind::Explicit: return dom.in_listed_profiles(profile);
  }
  return false;
}

inline DomainSpec DomainSpec::extended(const DomainSpec& base, std::vector<Profile> extras) {
  DomainSpec d(Kind::Extended, base.n(), base.m());
  for (const auto& p : extras) {
    d.check_shape(p);
    if (contains(base, p)) {
      throw Error(ErrorCode::InvalidArgument, "extra profile " + to_inline_string(p) + " already lies in the base");
    }
  }
  d.base_ = std::make_shared<const DomainSpec>(base);
  d.profiles_ = normalize(std::move(extras));
  return d;
}

namespace detail {
inline bool needs_full_scan(const DomainSpec& dom) {
  switch (dom.kind()) {
    case DomainSpec::Kind::Explicit: return false;
    case DomainSpec::Kind::Extended: return needs_full_scan(dom.base());
    default: return true;
  }
}

inline std::uint64_t checked_space(const DomainSpec& dom, std::uint64_t cap, const char* what) {
  const auto space = profile_space_size(dom.n(), dom.m());
  if (!space || *space > cap) {
    throw Error(ErrorCode::CapExceeded, std::string(what) + ": (m!)^n for n=" + std::to_string(dom.n()) +
                                            ", m=" + std::to_string(dom.m()) + " exceeds the cap of " +
                                            std::to_string(cap));
  }
  return *space;
}
}  // namespace detail

/// Visits every member exactly once in canonical order.
inline void for_each_member(const DomainSpec& dom, const Limits& limits,
                            const std::function<void(const Profile&)>& visit) {
  if (!detail::needs_full_scan(dom)) {
    if (dom.kind() == DomainSpec::Kind::Explicit) {
      for (const auto& p : dom.profiles()) visit(p);
      return;
    }
    std::vector<Profile> all;
    for_each_member(dom.base(), limits, [&](const Profile& p) { all.push_back(p); });
    all.insert(all.end(), dom.profiles().begin(), dom.profiles().end());
    std::sort(all.begin(), all.end());
    for (const auto& p : all) visit(p);
    return;
  }
  const std::uint64_t space = detail::checked_space(dom, limits.max_profiles, "enumerate");
  const int n = dom.n();
  const int m = dom.m();
  const std::uint64_t base = factorial(m);
  std::vector<PreferenceRelation> relations;
  relations.reserve(base);
  for (std::uint64_t r = 0; r < base; ++r) relations.push_back(PreferenceRelation::from_lex_rank(m, r));
  std::vector<std::uint64_t> digits(n, 0);
  std::vector<PreferenceRelation> current(n, relations[0]);
  for (std::uint64_t code = 0; code < space; ++code) {
    Profile p(current);
    if (contains(dom, p)) visit(p);
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[i] < base) {
        current[i] = relations[digits[i]];
        break;
      }
      digits[i] = 0;
      current[i] = relations[0];
    }
  }
}

inline std::vector<Profile> enumerate(const DomainSpec& dom, const Limits& limits = {}) {
  std::vector<Profile> out;
  for_each_member(dom, limits, [&](const Profile& p) { out.push_back(p); });
  return out;
}

inline void require_member(const DomainSpec& dom, const Profile& profile) {
  if (!contains(dom, profile)) {
    throw Error(ErrorCode::OutOfDomain, to_inline_string(profile) + " is not in " + dom.describe());
  }
}

/// In-domain profiles that differ from R only (and actually) in voter i's relation.
inline std::vector<Profile> unilateral_deviations(const DomainSpec& dom, const Profile& profile, Voter i) {
  require_member(dom, profile);
  std::vector<Profile> out;
  const std::uint64_t count = factorial(dom.m());
  for (std::uint64_t r = 0; r < count; ++r) {
    auto rel = PreferenceRelation::from_lex_rank(dom.m(), r);
    if (rel == profile.voter(i)) continue;
    auto candidate = profile.with_voter(i, std::move(rel));
    if (contains(dom, candidate)) out.push_back(std::move(candidate));
  }
  return out;
}

/// One adjacent swap applied to a profile.
struct SwapStep {
  Voter voter;
  Alternative upper;  ///< ranked directly above `lower` before the swap
  Alternative lower;
};

/// All in-domain single adjacent swaps of R, optionally excluding swaps that touch `fixed`.
/// Returned in canonical profile order.
inline std::vector<Profile> adjacent_neighbors(const DomainSpec& dom, const Profile& profile,
                                               std::optional<Alternative> fixed = std::nullopt) {
  require_member(dom, profile);
  std::vector<Profile> out;
  for (int i = 0; i < profile.n(); ++i) {
    const auto& rel = profile[i];
    for (int pos = 0; pos + 1 < rel.size(); ++pos) {
      if (fixed && (rel.at(pos) == *fixed || rel.at(pos + 1) == *fixed)) continue;
      auto candidate = profile.with_voter(Voter{i}, rel.swapped_at(pos));
      if (contains(dom, candidate)) out.push_back(std::move(candidate));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Members plus an index, for graph algorithms over a domain.
class DomainGraph {
 public:
  DomainGraph(const DomainSpec& dom, const Limits& limits) : dom_(dom) {
    if (detail::needs_full_scan(dom)) detail::checked_space(dom, limits.max_graph_profiles, "graph");
    Limits scan = limits;
    scan.max_profiles = std::max(limits.max_profiles, limits.max_graph_profiles);
    members_ = enumerate(dom, scan);
    if (members_.size() > limits.max_graph_profiles) {
      throw Error(ErrorCode::CapExceeded, "domain has more members than the graph cap");
    }
    index_.reserve(members_.size());
    for (std::size_t k = 0; k < members_.size(); ++k) index_.emplace(members_[k].code(), k);
  }

  std::size_t size() const { return members_.size(); }
  const Profile& member(std::size_t k) const { return members_[k]; }
  const std::vector<Profile>& members() const { return members_; }

  std::optional<std::size_t> index_of(const Profile& p) const {
    auto it = index_.find(p.code());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Indices of members reachable from `k` by one adjacent swap (not touching `fixed`).
  std::vector<std::size_t> neighbors(std::size_t k, std::optional<Alternative> fixed = std::nullopt) const {
    std::vector<std::size_t> out;
    const Profile& p = members_[k];
    for (int i = 0; i < p.n(); ++i) {
      const auto& rel = p[i];
      for (int pos = 0; pos + 1 < rel.size(); ++pos) {
        if (fixed && (rel.at(pos) == *fixed || rel.at(pos + 1) == *fixed)) continue;
        if (auto j = index_of(p.with_voter(Voter{i}, rel.swapped_at(pos)))) out.push_back(*j);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Component label per member, BFS from the lowest unlabelled index.
  std::vector<std::size_t> components(std::optional<Alternative> fixed = std::nullopt) const {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(members_.size(), unset);
    std::size_t next = 0;
    for (std::size_t start = 0; start < members_.size(); ++start) {
      if (label[start] != unset) continue;
      std::deque<std::size_t> frontier{start};
      label[start] = next;
      while (!frontier.empty()) {
        const std::size_t k = frontier.front();
        frontier.pop_front();
        for (std::size_t j : neighbors(k, fixed)) {
          if (label[j] == unset) {
            label[j] = next;
            frontier.push_back(j);
          }
        }
      }
      ++next;
    }
    return label;
  }

  /// BFS distances from `k` (unreachable = -1).
  std::vector<long> distances_from(std::size_t k, std::optional<Alternative> fixed = std::nullopt) const {
    std::vector<long> dist(members_.size(), -1);
    std::deque<std::size_t> frontier{k};
    dist[k] = 0;
    while (!frontier.empty()) {
      const std::size_t cur = frontier.front();
      frontier.pop_front();
      for (std::size_t j : neighbors(cur, fixed)) {
        if (dist[j] < 0) {
          dist[j] = dist[cur] + 1;
          frontier.push_back(j);
        }
      }
    }
    return dist;
  }

 private:
  DomainSpec dom_;
  std::vector<Profile> members_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct ConnectivityReport {
  bool weakly_connected = true;
  bool connected = true;
  /// First alternative whose fixed-x graph splits a class of profiles that agree on x's upper contour sets.
  std::optional<Alternative> failing_alternative;
  /// Two members that cannot be joined (by any path when weak connectivity fails,
  /// by an x-fixing path otherwise).
  std::optional<std::pair<Profile, Profile>> unjoined;
};

inline ConnectivityReport connectivity_report(const DomainSpec& dom, const Limits& limits = {}) {
  DomainGraph graph(dom, limits);
  ConnectivityReport report;
  if (graph.size() == 0) return report;
  const auto labels = graph.components();
  for (std::size_t k = 1; k < graph.size(); ++k) {
    if (labels[k] != labels[0]) {
      report.weakly_connected = false;
      report.connected = false;
      report.unjoined = std::make_pair(graph.member(0), graph.member(k));
      return report;
    }
  }
  // Swaps avoiding x never change x's upper contour sets, so each fixed-x
  // component sits inside one signature class; connectedness asks for equality.
  for (int x = 0; x < dom.m(); ++x) {
    const Alternative alt{x};
    const auto fixed_labels = graph.components(alt);
    std::map<std::vector<std::uint32_t>, std::size_t> first_in_class;
    for (std::size_t k = 0; k < graph.size(); ++k) {
      std::vector<std::uint32_t> signature;
      signature.reserve(dom.n());
      for (const auto& rel : graph.member(k).relations()) signature.push_back(upper_contour(rel, alt).bits());
      auto [it, inserted] = first_in_class.emplace(std::move(signature), k);
      if (!inserted && fixed_labels[it->second] != fixed_labels[k]) {
        report.connected = false;
        report.failing_alternative = alt;
        report.unjoined = std::make_pair(graph.member(it->second), graph.member(k));
        return report;
      }
    }
  }
  return report;
}

inline bool is_weakly_connected(const DomainSpec& dom, const Limits& limits = {}) {
  return connectivity_report(dom, limits).weakly_connected;
}

inline bool is_connected(const DomainSpec& dom, const Limits& limits = {}) {
  return connectivity_report(dom, limits).connected;
}

/// Cyclic profile without a Condorcet winner: voters 1..3 report a>b>c, b>c>a,
/// c>a>b; even voters from 4 report a>b>c and odd voters from 5 report c>b>a;
/// further alternatives follow in index order.
inline Profile r_star_profile(int n, int m) {
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::ParityMismatch, "R* needs an odd n >= 3");
  if (m < 3) throw Error(ErrorCode::InvalidArgument, "R* needs m >= 3");
  std::vector<PreferenceRelation> rel;
  rel.push_back(relation_with_prefix(m, {0, 1, 2}));
  rel.push_back(relation_with_prefix(m, {1, 2, 0}));
  rel.push_back(relation_with_prefix(m, {2, 0, 1}));
  for (int voter = 4; voter <= n; ++voter) {
    rel.push_back(voter % 2 == 0 ? relation_with_prefix(m, {0, 1, 2}) : relation_with_prefix(m, {2, 1, 0}));
  }
  return Profile(std::move(rel));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Grammar: full | condorcet | condorcet-for:<alt> | tb-condorcet:<order> | <base>+file:<path>
inline DomainSpec parse_domain(const std::string& text, int n, int m) {
  if (const auto plus = text.find("+file:"); plus != std::string::npos) {
    const DomainSpec base = parse_domain(text.substr(0, plus), n, m);
    auto extras = parse_profiles(read_text_file(text.substr(plus + 6)), n);
    return DomainSpec::extended(base, std::move(extras));
  }
  if (text == "full") return DomainSpec::full(n, m);
  if (text == "condorcet") return DomainSpec::condorcet(n, m);
  if (text.rfind("condorcet-for:", 0) == 0) {
    return DomainSpec::condorcet_for(n, m, parse_alternative(text.substr(14), m));
  }
  if (text.rfind("tb-condorcet:", 0) == 0) {
    auto order = parse_relation(text.substr(13));
    if (order.size() != m) throw Error(ErrorCode::SizeMismatch, "tie-breaker ranks a different m");
    return DomainSpec::tie_breaking(n, TieBreaker{std::move(order)});
  }
  throw Error(ErrorCode::Parse, "unknown domain '" + text + "'");
}

}  // namespace condlab

#endif  // CONDLAB_DOMAINS_HPP
