#ifndef CONDLAB_AXIOMS_HPP
#define CONDLAB_AXIOMS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <variant>
#include <vector>

#include "condlab/config.hpp"
#include "condlab/sds.hpp"

namespace condlab {

// ---------------------------------------------------------------------------
// Witnesses

/// A (group) manipulation: every coalition member strictly gains on some cut
/// or finds the outcomes SD-incomparable.
struct ManipulationWitness {
  Profile truthful;
  Profile deviation;
  std::vector<Voter> coalition;
  /// Per member, the cut x with f(R)(U(x)) < f(R')(U(x)) under the truthful relation.
  std::vector<Alternative> cuts;
};

struct ImpositionWitness {
  Alternative uncovered;
};

struct EfficiencyWitness {
  Profile profile;
  Alternative dominated;
  Alternative dominator;
  Rational probability;
};

/// Adjacent swap R -> R^{i:yx} (voter moves `lower` above `upper`) that changed
/// `affected` from `before` to `after`.
struct SwapWitness {
  Profile profile;
  Profile swapped;
  Voter voter;
  Alternative upper;
  Alternative lower;
  Alternative affected;
  Rational before;
  Rational after;
};

/// f(R, x) = lhs differs from the claimed representation value rhs.
struct MixtureWitness {
  Profile profile;
  Alternative alternative;
  Rational lhs;
  Rational rhs;
};

/// First offending step of an ad-path.
struct PathWitness {
  std::size_t index = 0;
  std::string reason;
};

using Witness =
    std::variant<ManipulationWitness, ImpositionWitness, EfficiencyWitness, SwapWitness, MixtureWitness, PathWitness>;

struct Verdict {
  std::string axiom;
  bool holds = true;
  std::optional<Witness> witness;
  std::uint64_t profiles_checked = 0;
  std::uint64_t comparisons = 0;
  /// Set when a group check stopped short of the full electorate; "holds" then
  /// only covers coalitions up to this size.
  std::optional<int> coalition_bound;
};

// ---------------------------------------------------------------------------
// Evaluated domain: members, code index and f(R) for each member.

class EvaluatedDomain {
 public:
  EvaluatedDomain(const Sds& sds, const DomainSpec& dom, const Limits& limits) : n_(dom.n()), m_(dom.m()) {
    if (sds.n() != dom.n() || sds.m() != dom.m()) throw Error(ErrorCode::SizeMismatch, "SDS and domain disagree on (n, m)");
    members_ = enumerate(dom, limits);
    index_.reserve(members_.size());
    lotteries_.reserve(members_.size());
    for (std::size_t k = 0; k < members_.size(); ++k) {
      index_.emplace(members_[k].code(), k);
      lotteries_.push_back(evaluate(sds, members_[k]));
    }
    base_ = factorial(m_);
    place_.assign(n_, 1);
    for (int i = n_ - 2; i >= 0; --i) place_[i] = place_[i + 1] * base_;
    for (std::uint64_t r = 0; r < base_; ++r) relations_.push_back(PreferenceRelation::from_lex_rank(m_, r));
    ranks_.reserve(members_.size());
    for (const auto& p : members_) {
      std::vector<std::uint64_t> rk;
      for (const auto& rel : p.relations()) rk.push_back(rel.lex_rank());
      ranks_.push_back(std::move(rk));
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return members_.size(); }
  const Profile& member(std::size_t k) const { return members_[k]; }
  const Lottery& lottery(std::size_t k) const { return lotteries_[k]; }
  std::uint64_t relation_count() const { return base_; }
  const PreferenceRelation& relation(std::uint64_t rank) const { return relations_[rank]; }
  std::uint64_t relation_rank(std::size_t k, int voter) const { return ranks_[k][voter]; }

  std::optional<std::size_t> find_code(std::uint64_t code) const {
    auto it = index_.find(code);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Code of member k with voter i's relation replaced by relation `rank`.
  std::uint64_t code_with(std::size_t k, int voter, std::uint64_t rank) const {
    return member_code(k) - ranks_[k][voter] * place_[voter] + rank * place_[voter];
  }

  std::uint64_t member_code(std::size_t k) const {
    std::uint64_t c = 0;
    for (int i = 0; i < n_; ++i) c += ranks_[k][i] * place_[i];
    return c;
  }

  std::uint64_t place(int voter) const { return place_[voter]; }

 private:
  int n_;
  int m_;
  std::vector<Profile> members_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<Lottery> lotteries_;
  std::uint64_t base_ = 1;
  std::vector<std::uint64_t> place_;
  std::vector<PreferenceRelation> relations_;
  std::vector<std::vector<std::uint64_t>> ranks_;
};

namespace detail {

/// First cut (by position in pref) where p's mass falls below q's, if any.
inline std::optional<Alternative> losing_cut(const PreferenceRelation& pref, const Lottery& p, const Lottery& q) {
  Rational diff = 0;
  for (int pos = 0; pos + 1 < pref.size(); ++pos) {
    const Alternative x = pref.at(pos);
    diff += p[x];
    diff -= q[x];
    if (diff < 0) return x;
  }
  return std::nullopt;
}

struct ScanResult {
  std::optional<ManipulationWitness> witness;
  std::size_t witness_profile = 0;
  std::uint64_t profiles = 0;
  std::uint64_t comparisons = 0;
};

inline ScanResult scan_unilateral(const EvaluatedDomain& ed, std::size_t begin, std::size_t end) {
  ScanResult res;
  for (std::size_t k = begin; k < end; ++k) {
    ++res.profiles;
    const Profile& truthful = ed.member(k);
    for (int i = 0; i < ed.n(); ++i) {
      const std::uint64_t own = ed.relation_rank(k, i);
      for (std::uint64_t r = 0; r < ed.relation_count(); ++r) {
        if (r == own) continue;
        auto j = ed.find_code(ed.code_with(k, i, r));
        if (!j) continue;
        ++res.comparisons;
        if (auto cut = losing_cut(truthful[i], ed.lottery(k), ed.lottery(*j))) {
          res.witness = ManipulationWitness{truthful, ed.member(*j), {Voter{i}}, {*cut}};
          res.witness_profile = k;
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace detail

/// Every voter weakly SD-prefers the truthful outcome to every in-domain
/// unilateral misreport. The witness is the canonically first violation in
/// (profile, voter, misreport) order, independent of the worker count.
inline Verdict check_strategyproof(const EvaluatedDomain& ed, int threads = 1) {
  Verdict v;
  v.axiom = "strategyproofness";
  const std::size_t total = ed.size();
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(total, 1))));
  std::vector<detail::ScanResult> parts(threads);
  if (threads == 1) {
    parts[0] = detail::scan_unilateral(ed, 0, total);
  } else {
    std::vector<std::thread> workers;
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = total * t / threads;
      const std::size_t end = total * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] { parts[t] = detail::scan_unilateral(ed, begin, end); });
    }
    for (auto& w : workers) w.join();
  }
  for (auto& part : parts) {
    v.profiles_checked += part.profiles;
    v.comparisons += part.comparisons;
    if (part.witness && v.holds) {
      v.holds = false;
      v.witness = std::move(*part.witness);
    }
  }
  return v;
}

inline Verdict check_strategyproof(const Sds& sds, const DomainSpec& dom, const Limits& limits = {}) {
  return check_strategyproof(EvaluatedDomain(sds, dom, limits), limits.threads);
}

/// For every coalition I (|I| <= max_coalition) and joint in-domain misreport,
/// some member of I weakly SD-prefers the truthful outcome. Coalitions run
/// size-then-lex, misreports in lexicographic order of the members' relations.
inline Verdict check_group_strategyproof(const EvaluatedDomain& ed, int max_coalition, const Limits& limits = {}) {
  Verdict v;
  v.axiom = "group-strategyproofness";
  const int n = ed.n();
  max_coalition = std::min(max_coalition, n);
  if (max_coalition < 1) throw Error(ErrorCode::InvalidArgument, "max_coalition must be positive");
  if (max_coalition < n) v.coalition_bound = max_coalition;
  {
    std::uint64_t joint = 1;
    for (int s = 0; s < max_coalition; ++s) {
      if (joint > limits.max_profiles / ed.relation_count()) {
        throw Error(ErrorCode::CapExceeded, "(m!)^max_coalition exceeds the per-profile cap");
      }
      joint *= ed.relation_count();
    }
  }
  // Coalitions in size-then-lex order.
  std::vector<std::vector<int>> coalitions;
  for (int size = 1; size <= max_coalition; ++size) {
    std::vector<int> pick(size);
    for (int s = 0; s < size; ++s) pick[s] = s;
    while (true) {
      coalitions.push_back(pick);
      int s = size - 1;
      while (s >= 0 && pick[s] == n - size + s) --s;
      if (s < 0) break;
      ++pick[s];
      for (int t = s + 1; t < size; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  const std::uint64_t base = ed.relation_count();
  for (std::size_t k = 0; k < ed.size(); ++k) {
    ++v.profiles_checked;
    const Profile& truthful = ed.member(k);
    const std::uint64_t code = ed.member_code(k);
    for (const auto& coalition : coalitions) {
      const int size = static_cast<int>(coalition.size());
      std::vector<std::uint64_t> digits(size, 0);
      while (true) {
        bool unchanged = true;
        std::uint64_t dev = code;
        for (int s = 0; s < size; ++s) {
          const int voter = coalition[s];
          const std::uint64_t own = ed.relation_rank(k, voter);
          if (digits[s] != own) unchanged = false;
          dev = dev - own * ed.place(voter) + digits[s] * ed.place(voter);
        }
        if (!unchanged) {
          if (auto j = ed.find_code(dev)) {
            ++v.comparisons;
            std::vector<Alternative> cuts;
            for (int voter : coalition) {
              auto cut = detail::losing_cut(truthful[voter], ed.lottery(k), ed.lottery(*j));
              if (!cut) break;
              cuts.push_back(*cut);
            }
            if (static_cast<int>(cuts.size()) == size) {
              v.holds = false;
              std::vector<Voter> members;
              for (int voter : coalition) members.push_back(Voter{voter});
              v.witness = ManipulationWitness{truthful, ed.member(*j), std::move(members), std::move(cuts)};
              return v;
            }
          }
        }
        int s = size - 1;
        while (s >= 0 && ++digits[s] == base) digits[s--] = 0;
        if (s < 0) break;
      }
    }
  }
  return v;
}

inline Verdict check_group_strategyproof(const Sds& sds, const DomainSpec& dom, int max_coalition,
                                         const Limits& limits = {}) {
  return check_group_strategyproof(EvaluatedDomain(sds, dom, limits), max_coalition, limits);
}

/// Each alternative receives probability exactly 1 at some member profile.
inline Verdict check_non_imposition(const EvaluatedDomain& ed) {
  Verdict v;
  v.axiom = "non-imposition";
  v.profiles_checked = ed.size();
  for (int x = 0; x < ed.m(); ++x) {
    bool covered = false;
    for (std::size_t k = 0; k < ed.size() && !covered; ++k) {
      ++v.comparisons;
      covered = ed.lottery(k)[Alternative{x}] == 1;
    }
    if (!covered) {
      v.holds = false;
      v.witness = ImpositionWitness{Alternative{x}};
      return v;
    }
  }
  return v;
}

inline Verdict check_non_imposition(const Sds& sds, const DomainSpec& dom, const Limits& limits = {}) {
  return check_non_imposition(EvaluatedDomain(sds, dom, limits));
}

/// Pareto-dominated alternatives get probability zero.
inline Verdict check_ex_post_efficiency(const EvaluatedDomain& ed) {
  Verdict v;
  v.axiom = "ex-post-efficiency";
  for (std::size_t k = 0; k < ed.size(); ++k) {
    ++v.profiles_checked;
    const Profile& p = ed.member(k);
    for (int y = 0; y < ed.m(); ++y) {
      for (int x = 0; x < ed.m(); ++x) {
        if (x == y || !pareto_dominates(p, Alternative{x}, Alternative{y})) continue;
        ++v.comparisons;
        const Rational& prob = ed.lottery(k)[Alternative{y}];
        if (prob != 0) {
          v.holds = false;
          v.witness = EfficiencyWitness{p, Alternative{y}, Alternative{x}, prob};
          return v;
        }
        break;
      }
    }
  }
  return v;
}

inline Verdict check_ex_post_efficiency(const Sds& sds, const DomainSpec& dom, const Limits& limits = {}) {
  return check_ex_post_efficiency(EvaluatedDomain(sds, dom, limits));
}

namespace detail {
enum class SwapAxiom { Localized, NonPerverse };

inline Verdict scan_swaps(const EvaluatedDomain& ed, SwapAxiom axiom) {
  Verdict v;
  v.axiom = axiom == SwapAxiom::Localized ? "localizedness" : "non-perversity";
  for (std::size_t k = 0; k < ed.size(); ++k) {
    ++v.profiles_checked;
    const Profile& p = ed.member(k);
    for (int i = 0; i < ed.n(); ++i) {
      const auto& rel = p[i];
      for (int pos = 0; pos + 1 < ed.m(); ++pos) {
        const auto swapped_rel = rel.swapped_at(pos);
        auto j = ed.find_code(ed.code_with(k, i, swapped_rel.lex_rank()));
        if (!j) continue;
        const Alternative upper = rel.at(pos);
        const Alternative lower = rel.at(pos + 1);
        const Lottery& before = ed.lottery(k);
        const Lottery& after = ed.lottery(*j);
        if (axiom == SwapAxiom::NonPerverse) {
          ++v.comparisons;
          if (after[lower] < before[lower]) {
            v.holds = false;
            v.witness = SwapWitness{p, ed.member(*j), Voter{i}, upper, lower, lower, before[lower], after[lower]};
            return v;
          }
          continue;
        }
        for (int z = 0; z < ed.m(); ++z) {
          const Alternative alt{z};
          if (alt == upper || alt == lower) continue;
          ++v.comparisons;
          if (after[alt] != before[alt]) {
            v.holds = false;
            v.witness = SwapWitness{p, ed.member(*j), Voter{i}, upper, lower, alt, before[alt], after[alt]};
            return v;
          }
        }
      }
    }
  }
  return v;
}
}  // namespace detail

/// An adjacent swap of x and y changes no probability outside {x, y}.
inline Verdict check_localized(const EvaluatedDomain& ed) { return detail::scan_swaps(ed, detail::SwapAxiom::Localized); }
inline Verdict check_localized(const Sds& sds, const DomainSpec& dom, const Limits& limits = {}) {
  return check_localized(EvaluatedDomain(sds, dom, limits));
}

/// Reinforcing y against its upper neighbour never lowers y's probability.
inline Verdict check_non_perverse(const EvaluatedDomain& ed) {
  return detail::scan_swaps(ed, detail::SwapAxiom::NonPerverse);
}
inline Verdict check_non_perverse(const Sds& sds, const DomainSpec& dom, const Limits& limits = {}) {
  return check_non_perverse(EvaluatedDomain(sds, dom, limits));
}

struct ImplicationReport {
  Verdict strategyproof;
  Verdict localized;
  Verdict non_perverse;
  bool full_domain = false;
  std::vector<std::string> discrepancies;
};

/// SP implies localized and non-perverse on every domain; on the full domain
/// the converse holds too. Any mismatch is reported as a discrepancy.
inline ImplicationReport implication_suite(const Sds& sds, const DomainSpec& dom, const Limits& limits = {}) {
  EvaluatedDomain ed(sds, dom, limits);
  ImplicationReport report{check_strategyproof(ed, limits.threads), check_localized(ed), check_non_perverse(ed),
                           dom.kind() == DomainSpec::Kind::Full, {}};
  const bool sp = report.strategyproof.holds;
  const bool both = report.localized.holds && report.non_perverse.holds;
  if (sp && !both) {
    report.discrepancies.push_back(sds.describe() + ": strategyproof but not localized and non-perverse on " +
                                   dom.describe());
  }
  if (report.full_domain && both && !sp) {
    report.discrepancies.push_back(sds.describe() + ": localized and non-perverse but manipulable on the full domain");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Witness replay: recompute the single comparison a witness names.

inline bool reproduces(const Sds& sds, const ManipulationWitness& w) {
  if (w.coalition.empty() || w.coalition.size() != w.cuts.size()) return false;
  for (int i = 0; i < w.truthful.n(); ++i) {
    const bool member = std::find(w.coalition.begin(), w.coalition.end(), Voter{i}) != w.coalition.end();
    if (!member && !(w.truthful[i] == w.deviation[i])) return false;
  }
  if (w.truthful == w.deviation) return false;
  const Lottery truth = evaluate(sds, w.truthful);
  const Lottery lie = evaluate(sds, w.deviation);
  for (std::size_t s = 0; s < w.coalition.size(); ++s) {
    const auto& pref = w.truthful.voter(w.coalition[s]);
    const AltSet cut = upper_contour(pref, w.cuts[s]);
    if (!(mass(truth, cut) < mass(lie, cut))) return false;
  }
  return true;
}

inline bool reproduces(const Sds& sds, const ImpositionWitness& w, const DomainSpec& dom, const Limits& limits = {}) {
  EvaluatedDomain ed(sds, dom, limits);
  for (std::size_t k = 0; k < ed.size(); ++k) {
    if (ed.lottery(k)[w.uncovered] == 1) return false;
  }
  return true;
}

inline bool reproduces(const Sds& sds, const EfficiencyWitness& w) {
  return pareto_dominates(w.profile, w.dominator, w.dominated) && evaluate(sds, w.profile)[w.dominated] != 0;
}

inline bool reproduces(const Sds& sds, const SwapWitness& w, bool localized) {
  if (swap(w.profile, w.voter, w.upper, w.lower) != w.swapped) return false;
  const Rational before = evaluate(sds, w.profile)[w.affected];
  const Rational after = evaluate(sds, w.swapped)[w.affected];
  if (localized) return w.affected != w.upper && w.affected != w.lower && before != after;
  return w.affected == w.lower && after < before;
}

}  // namespace condlab

#endif  // CONDLAB_AXIOMS_HPP
