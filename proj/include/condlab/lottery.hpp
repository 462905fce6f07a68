#ifndef CONDLAB_LOTTERY_HPP
#define CONDLAB_LOTTERY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "condlab/core.hpp"
#include "condlab/rational.hpp"

namespace condlab {

/// Exact probability distribution over m alternatives.
class Lottery {
 public:
  Lottery() = default;

  /// Validates nonnegativity and unit total.
  explicit Lottery(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw Error(ErrorCode::InvalidArgument, "lottery over zero alternatives");
    Rational total = 0;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
      if (probs_[k] < 0) {
        throw Error(ErrorCode::NegativeProbability,
                    std::string("probability of ") + letter(Alternative{static_cast<int>(k)}) + " is " +
                        condlab::to_string(probs_[k]));
      }
      total += probs_[k];
    }
    if (total != 1) throw Error(ErrorCode::InvalidArgument, "probabilities sum to " + condlab::to_string(total));
  }

  static Lottery point(int m, Alternative x) {
    std::vector<Rational> p(m, Rational(0));
    p.at(x.index) = 1;
    return Lottery(std::move(p));
  }

  /// Uniform over a nonempty subset of alternatives.
  static Lottery uniform(int m, AltSet support) {
    if (support.empty()) throw Error(ErrorCode::InvalidArgument, "uniform lottery over empty set");
    std::vector<Rational> p(m, Rational(0));
    const Rational share(1, support.size());
    for (auto x : support.members()) p.at(x.index) = share;
    return Lottery(std::move(p));
  }

  static Lottery uniform(int m) { return uniform(m, AltSet::all(m)); }

  int size() const { return static_cast<int>(probs_.size()); }
  const Rational& operator[](Alternative x) const { return probs_.at(x.index); }
  const std::vector<Rational>& probs() const { return probs_; }

  AltSet support() const {
    AltSet s;
    for (int k = 0; k < size(); ++k) {
      if (probs_[k] != 0) s.insert(Alternative{k});
    }
    return s;
  }

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  std::vector<Rational> probs_;
};

inline Rational mass(const Lottery& p, AltSet set) {
  Rational total = 0;
  for (int k = 0; k < p.size(); ++k) {
    if (set.contains(Alternative{k})) total += p[Alternative{k}];
  }
  return total;
}

enum class SdRelation { Dominates, Dominated, Equivalent, Incomparable };

inline const char* to_string(SdRelation r) {
  switch (r) {
    case SdRelation::Dominates: return "dominates";
    case SdRelation::Dominated: return "dominated";
    case SdRelation::Equivalent: return "equivalent";
    case SdRelation::Incomparable: return "incomparable";
  }
  return "?";
}

/// Outcome of comparing p against q. A cut is named by the alternative x whose
/// upper contour set U(pref, x) it is.
struct SdVerdict {
  SdRelation relation = SdRelation::Equivalent;
  /// First cut with p(U) < q(U), i.e. why p does not weakly dominate q.
  std::optional<Alternative> cut_against_p;
  /// First cut with q(U) < p(U), i.e. why q does not weakly dominate p.
  std::optional<Alternative> cut_against_q;

  /// p weakly SD-dominates q (dominates or equivalent).
  bool p_weakly_dominates() const { return !cut_against_p.has_value(); }
};

inline SdVerdict sd_compare(const PreferenceRelation& pref, const Lottery& p, const Lottery& q) {
  if (p.size() != q.size() || p.size() != pref.size()) {
    throw Error(ErrorCode::SizeMismatch, "lotteries and relation disagree on m");
  }
  SdVerdict v;
  Rational mp = 0;
  Rational mq = 0;
  for (int pos = 0; pos < pref.size(); ++pos) {
    const Alternative x = pref.at(pos);
    mp += p[x];
    mq += q[x];
    if (mp < mq && !v.cut_against_p) v.cut_against_p = x;
    if (mq < mp && !v.cut_against_q) v.cut_against_q = x;
  }
  const bool p_geq = !v.cut_against_p;
  const bool q_geq = !v.cut_against_q;
  if (p_geq && q_geq) {
    v.relation = SdRelation::Equivalent;
  } else if (p_geq) {
    v.relation = SdRelation::Dominates;
  } else if (q_geq) {
    v.relation = SdRelation::Dominated;
  } else {
    v.relation = SdRelation::Incomparable;
  }
  return v;
}

using WeightedLottery = std::pair<Rational, Lottery>;

namespace detail {
inline std::vector<Rational> combine(const std::vector<WeightedLottery>& parts, bool allow_negative) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "combination of zero lotteries");
  const int m = parts.front().second.size();
  Rational total_weight = 0;
  std::vector<Rational> out(m, Rational(0));
  for (const auto& [w, lot] : parts) {
    if (!allow_negative && w < 0) throw Error(ErrorCode::InvalidArgument, "negative mixture weight");
    if (lot.size() != m) throw Error(ErrorCode::SizeMismatch, "lotteries over different m");
    total_weight += w;
    for (int k = 0; k < m; ++k) out[k] += w * lot[Alternative{k}];
  }
  if (total_weight != 1) {
    throw Error(ErrorCode::InvalidArgument, "weights sum to " + condlab::to_string(total_weight) + ", not 1");
  }
  return out;
}
}  // namespace detail

/// Convex combination.
inline Lottery mix(const std::vector<WeightedLottery>& parts) { return Lottery(detail::combine(parts, false)); }

/// Thrown when a signed combination leaves the simplex.
class NegativeProbabilityError : public Error {
 public:
  NegativeProbabilityError(Alternative x, Rational value)
      : Error(ErrorCode::NegativeProbability,
              std::string("signed combination gives ") + letter(x) + " probability " + condlab::to_string(value)),
        alternative_(x),
        value_(std::move(value)) {}

  Alternative alternative() const { return alternative_; }
  const Rational& value() const { return value_; }

 private:
  Alternative alternative_;
  Rational value_;
};

/// Affine combination (weights may be negative, must sum to 1).
inline Lottery affine_combine(const std::vector<WeightedLottery>& parts) {
  auto probs = detail::combine(parts, true);
  for (int k = 0; k < static_cast<int>(probs.size()); ++k) {
    if (probs[k] < 0) throw NegativeProbabilityError(Alternative{k}, probs[k]);
  }
  return Lottery(std::move(probs));
}

inline std::string to_string(const Lottery& p) {
  std::string out = "(";
  for (int k = 0; k < p.size(); ++k) {
    if (k) out += ", ";
    out += condlab::to_string(p[Alternative{k}]);
  }
  return out + ")";
}

}  // namespace condlab

#endif  // CONDLAB_LOTTERY_HPP
