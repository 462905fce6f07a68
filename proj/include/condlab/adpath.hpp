#ifndef CONDLAB_ADPATH_HPP
#define CONDLAB_ADPATH_HPP

#include <optional>
#include <string>
#include <vector>

#include "condlab/axioms.hpp"

namespace condlab {

/// Profiles joined by single adjacent swaps; swaps[k] turns steps[k] into steps[k + 1].
struct AdPath {
  std::vector<Profile> steps;
  std::vector<SwapStep> swaps;

  std::size_t length() const { return swaps.size(); }
};

namespace detail {

class PathBuilder {
 public:
  explicit PathBuilder(const Profile& start) { path_.steps.push_back(start); }

  const Profile& current() const { return path_.steps.back(); }
  AdPath finish() && { return std::move(path_); }

  void swap_down(int voter, int pos) {
    const auto& pref = current()[voter];
    SwapStep step{Voter{voter}, pref.at(pos), pref.at(pos + 1)};
    path_.steps.push_back(current().with_voter(Voter{voter}, pref.swapped_at(pos)));
    path_.swaps.push_back(step);
  }

  /// Bubbles x up or down until it sits at position `target`.
  void move_to(int voter, Alternative x, int target) {
    int pos = current()[voter].position(x);
    while (pos > target) {
      swap_down(voter, pos - 1);
      --pos;
    }
    while (pos < target) {
      swap_down(voter, pos);
      ++pos;
    }
  }

  /// Adjacent-transposition sort of one relation into `target`, leftmost inversion first.
  /// Only pairs ordered differently by the two relations are ever swapped.
  void sort_into(int voter, const PreferenceRelation& target) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int pos = 0; pos + 1 < target.size(); ++pos) {
        const auto& pref = current()[voter];
        if (target.prefers(pref.at(pos + 1), pref.at(pos))) {
          swap_down(voter, pos);
          changed = true;
        }
      }
    }
  }

  void sort_all_into(const Profile& target) {
    for (int i = 0; i < target.n(); ++i) sort_into(i, target[i]);
  }

 private:
  AdPath path_;
};

/// `order` with `x` removed and reinserted at `pos` (after removal).
inline PreferenceRelation place(const PreferenceRelation& order, Alternative x, int pos) {
  std::vector<Alternative> rest;
  for (const auto& y : order.order()) {
    if (y != x) rest.push_back(y);
  }
  rest.insert(rest.begin() + pos, x);
  return PreferenceRelation(std::move(rest));
}

/// `order` with x directly below `anchor`.
inline PreferenceRelation place_below(const PreferenceRelation& order, Alternative x, Alternative anchor) {
  std::vector<Alternative> rest;
  for (const auto& y : order.order()) {
    if (y == x) continue;
    rest.push_back(y);
    if (y == anchor) rest.push_back(x);
  }
  return PreferenceRelation(std::move(rest));
}

inline std::optional<Alternative> domain_winner(const DomainSpec& dom, const Profile& profile) {
  if (dom.kind() == DomainSpec::Kind::TieBreakingCondorcet) return tie_broken_winner(profile, dom.tie_breaker());
  return condorcet_winner(profile);
}

inline void require_builder_domain(const DomainSpec& dom, const Profile& from, const Profile& to) {
  if (dom.kind() == DomainSpec::Kind::Condorcet) {
    if (dom.n() % 2 == 0) {
      throw Error(ErrorCode::ParityMismatch, "the Condorcet-domain builder needs an odd number of voters");
    }
  } else if (dom.kind() == DomainSpec::Kind::TieBreakingCondorcet) {
    if (dom.n() % 2 != 0) {
      throw Error(ErrorCode::ParityMismatch, "the tie-breaking builder needs an even number of voters");
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "ad-paths are only constructed on condorcet or tb-condorcet domains");
  }
  require_member(dom, from);
  require_member(dom, to);
}

/// Winner c is shared by the current profile and `target`, and every voter
/// ranks x identically in both. Moves to `target` without swapping x: first
/// c is lifted to the top (voters preferring c to x) or directly below x
/// (everyone else), then the other alternatives are reordered, then c is
/// lowered into place.
inline void same_winner_fixing(PathBuilder& b, const Profile& target, Alternative c, Alternative x) {
  const Profile& start = b.current();
  const int n = start.n();
  std::vector<bool> above(n);
  for (int i = 0; i < n; ++i) above[i] = start[i].prefers(c, x);
  for (int i = 0; i < n; ++i) {
    if (above[i]) {
      b.move_to(i, c, 0);
    } else {
      b.move_to(i, c, b.current()[i].position(x) + 1);
    }
  }
  for (int i = 0; i < n; ++i) {
    const PreferenceRelation shaped = above[i] ? place(target[i], c, 0) : place_below(target[i], c, x);
    b.sort_into(i, shaped);
  }
  b.sort_all_into(target);
}

}  // namespace detail

/// Ad-path inside a Condorcet domain (odd n) or tie-breaking Condorcet domain
/// (even n). The winner c of `from` is lifted to unanimous top; if the target
/// winner c' differs it is lifted to unanimous second and voters swap the two
/// in ascending order; the rest is reordered below c' and c' is finally lowered.
inline AdPath build_adpath(const DomainSpec& dom, const Profile& from, const Profile& to) {
  detail::require_builder_domain(dom, from, to);
  const Alternative c = *detail::domain_winner(dom, from);
  const Alternative c2 = *detail::domain_winner(dom, to);
  detail::PathBuilder b(from);
  if (from == to) return std::move(b).finish();
  const int n = dom.n();
  for (int i = 0; i < n; ++i) b.move_to(i, c, 0);
  if (c != c2) {
    for (int i = 0; i < n; ++i) b.move_to(i, c2, 1);
    for (int i = 0; i < n; ++i) b.swap_down(i, 0);
  }
  for (int i = 0; i < n; ++i) b.sort_into(i, detail::place(to[i], c2, 0));
  b.sort_all_into(to);
  return std::move(b).finish();
}

/// Ad-path along which x never moves. Requires every voter's upper contour set
/// of x to agree between `from` and `to`.
inline AdPath build_adpath_fixing(const DomainSpec& dom, const Profile& from, const Profile& to, Alternative x) {
  detail::require_builder_domain(dom, from, to);
  require_alternative(from, x);
  const int n = dom.n();
  for (int i = 0; i < n; ++i) {
    if (upper_contour(from[i], x) != upper_contour(to[i], x)) {
      throw Error(ErrorCode::PreconditionViolated, "voter " + std::to_string(i + 1) + " ranks " + letter(x) +
                                                       " against a different upper contour set in the two profiles");
    }
  }
  const Alternative c = *detail::domain_winner(dom, from);
  const Alternative c2 = *detail::domain_winner(dom, to);
  detail::PathBuilder b(from);
  if (from == to) return std::move(b).finish();

  if (x == c || x == c2) {
    // x keeps all its margins, so it stays the winner; reorder around it.
    b.sort_all_into(to);
    return std::move(b).finish();
  }
  if (c == c2) {
    detail::same_winner_fixing(b, to, c, x);
    return std::move(b).finish();
  }

  // Intermediate profile: the other alternatives ordered as in `to`, c and c2
  // either on top or directly below x depending on which side of x each voter puts them.
  std::vector<PreferenceRelation> mid(n);
  std::vector<int> handover;
  for (int i = 0; i < n; ++i) {
    const bool c_above = from[i].prefers(c, x);
    const bool c2_above = from[i].prefers(c2, x);
    PreferenceRelation rel = to[i];
    if (c_above && c2_above) {
      rel = detail::place(detail::place(rel, c2, 0), c, 0);
      handover.push_back(i);
    } else if (c_above) {
      rel = detail::place_below(detail::place(rel, c, 0), c2, x);
    } else if (c2_above) {
      rel = detail::place_below(detail::place(rel, c2, 0), c, x);
    } else {
      rel = detail::place_below(detail::place_below(rel, c, x), c2, c);
      handover.push_back(i);
    }
    mid[i] = std::move(rel);
  }
  detail::same_winner_fixing(b, Profile(mid), c, x);
  for (int i : handover) b.swap_down(i, b.current()[i].position(c));
  detail::same_winner_fixing(b, to, c2, x);
  return std::move(b).finish();
}

/// Every step in dom, consecutive steps one adjacent swap apart, and (with
/// `fixed`) no swap touching the fixed alternative.
inline Verdict validate_adpath(const DomainSpec& dom, const AdPath& path,
                               std::optional<Alternative> fixed = std::nullopt) {
  Verdict v;
  v.axiom = "ad-path";
  auto fail = [&](std::size_t index, std::string reason) {
    v.holds = false;
    v.witness = PathWitness{index, std::move(reason)};
    return v;
  };
  if (path.steps.empty()) return fail(0, "empty path");
  if (!path.swaps.empty() && path.swaps.size() + 1 != path.steps.size()) {
    return fail(0, "swap records do not match the number of steps");
  }
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const Profile& p = path.steps[k];
    ++v.profiles_checked;
    if (p.n() != dom.n() || p.m() != dom.m()) return fail(k, "profile has the wrong shape");
    if (!contains(dom, p)) return fail(k, "profile is outside the domain");
    if (k == 0) continue;
    ++v.comparisons;
    const Profile& prev = path.steps[k - 1];
    std::vector<int> changed;
    for (int i = 0; i < p.n(); ++i) {
      if (prev[i] != p[i]) changed.push_back(i);
    }
    if (changed.size() != 1) return fail(k, "not adjacent: " + std::to_string(changed.size()) + " voters changed");
    const int i = changed.front();
    std::vector<int> diff;
    for (int pos = 0; pos < p.m(); ++pos) {
      if (prev[i].at(pos) != p[i].at(pos)) diff.push_back(pos);
    }
    if (diff.size() != 2 || diff[1] != diff[0] + 1 || prev[i].swapped_at(diff[0]) != p[i]) {
      return fail(k, "not adjacent: voter " + std::to_string(i + 1) + " changed more than one adjacent pair");
    }
    const Alternative upper = prev[i].at(diff[0]);
    const Alternative lower = prev[i].at(diff[1]);
    if (fixed && (upper == *fixed || lower == *fixed)) {
      return fail(k, std::string("swap moves the fixed alternative ") + letter(*fixed));
    }
    if (!path.swaps.empty()) {
      const SwapStep& rec = path.swaps[k - 1];
      if (rec.voter.index != i || rec.upper != upper || rec.lower != lower) {
        return fail(k, "swap record disagrees with the profiles");
      }
    }
  }
  return v;
}

inline nlohmann::json adpath_to_json(const AdPath& path) {
  nlohmann::json j;
  j["profiles"] = nlohmann::json::array();
  for (const auto& p : path.steps) j["profiles"].push_back(to_string(p));
  j["swaps"] = nlohmann::json::array();
  for (const auto& s : path.swaps) {
    j["swaps"].push_back({{"voter", s.voter.index + 1},
                          {"x", std::string(1, letter(s.upper))},
                          {"y", std::string(1, letter(s.lower))}});
  }
  return j;
}

inline AdPath adpath_from_json(const nlohmann::json& j, int m) {
  if (!j.is_object() || !j.contains("profiles") || !j["profiles"].is_array()) {
    throw Error(ErrorCode::Parse, "ad-path JSON needs a profiles array");
  }
  AdPath path;
  for (const auto& text : j["profiles"]) path.steps.push_back(parse_profile(text.get<std::string>()));
  if (j.contains("swaps")) {
    for (const auto& s : j["swaps"]) {
      path.swaps.push_back(SwapStep{Voter{s.at("voter").get<int>() - 1}, parse_alternative(s.at("x").get<std::string>(), m),
                                    parse_alternative(s.at("y").get<std::string>(), m)});
    }
  }
  return path;
}

}  // namespace condlab

#endif  // CONDLAB_ADPATH_HPP
