#ifndef CONDLAB_SDS_HPP
#define CONDLAB_SDS_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "condlab/domains.hpp"
#include "condlab/lottery.hpp"

namespace condlab {

class Sds;

struct WeightedSds {
  Rational weight;
  std::shared_ptr<const Sds> sds;
};

/// A social decision scheme for a fixed (n, m), together with the domain it is defined on.
class Sds {
 public:
  enum class Kind {
    Dictatorship,
    RandomDictatorship,
    Condorcet,
    TieBreakingCondorcet,
    Mixture,
    SignedMixture,
    Plurality,
    Borda,
    Table,
  };

  using TableMap = std::map<Profile, Lottery>;

  static Sds dictatorship(int n, int m, Voter i) {
    if (i.index < 0 || i.index >= n) throw Error(ErrorCode::InvalidArgument, "dictator index out of range");
    Sds s(Kind::Dictatorship, DomainSpec::full(n, m));
    s.dictator_ = i;
    return s;
  }

  static Sds random_dictatorship(int n, int m, std::vector<Rational> weights) {
    if (static_cast<int>(weights.size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "random dictatorship needs one weight per voter");
    }
    Rational total = 0;
    for (const auto& w : weights) {
      if (w < 0) throw Error(ErrorCode::InvalidArgument, "random dictatorship weight is negative");
      total += w;
    }
    if (total != 1) throw Error(ErrorCode::InvalidArgument, "random dictatorship weights sum to " + to_string(total));
    Sds s(Kind::RandomDictatorship, DomainSpec::full(n, m));
    s.weights_ = std::move(weights);
    return s;
  }

  static Sds uniform_random_dictatorship(int n, int m) {
    return random_dictatorship(n, m, std::vector<Rational>(n, Rational(1, n)));
  }

  static Sds condorcet(int n, int m) { return Sds(Kind::Condorcet, DomainSpec::condorcet(n, m)); }

  static Sds tie_breaking_condorcet(int n, TieBreaker tb) {
    Sds s(Kind::TieBreakingCondorcet, DomainSpec::tie_breaking(n, tb));
    s.tie_breaker_ = std::move(tb);
    return s;
  }

  static Sds mixture(std::vector<WeightedSds> parts) { return combination(Kind::Mixture, std::move(parts)); }
  static Sds signed_mixture(std::vector<WeightedSds> parts) {
    return combination(Kind::SignedMixture, std::move(parts));
  }

  static Sds plurality(int n, int m) { return Sds(Kind::Plurality, DomainSpec::full(n, m)); }
  static Sds borda(int n, int m) { return Sds(Kind::Borda, DomainSpec::full(n, m)); }

  /// Defined exactly on the table's keys.
  static Sds table(int n, int m, TableMap entries) {
    std::vector<Profile> keys;
    for (const auto& [profile, lottery] : entries) {
      if (lottery.size() != m) throw Error(ErrorCode::SizeMismatch, "table lottery has wrong m");
      keys.push_back(profile);
    }
    Sds s(Kind::Table, DomainSpec::explicit_set(n, m, std::move(keys)));
    s.table_ = std::make_shared<const TableMap>(std::move(entries));
    return s;
  }

  Kind kind() const { return kind_; }
  int n() const { return valid_domain_.n(); }
  int m() const { return valid_domain_.m(); }
  const DomainSpec& valid_domain() const { return valid_domain_; }
  Voter dictator() const { return dictator_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const TieBreaker& tie_breaker() const { return tie_breaker_.value(); }
  const std::vector<WeightedSds>& parts() const { return parts_; }
  const TableMap& table_entries() const { return *table_; }

  std::string describe() const;

 private:
  Sds(Kind kind, DomainSpec dom) : kind_(kind), valid_domain_(std::move(dom)) {}

  static Sds combination(Kind kind, std::vector<WeightedSds> parts) {
    if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "mixture of zero rules");
    Rational total = 0;
    const DomainSpec* restrictive = nullptr;
    for (const auto& part : parts) {
      if (!part.sds) throw Error(ErrorCode::InvalidArgument, "null mixture part");
      if (kind == Kind::Mixture && part.weight < 0) {
        throw Error(ErrorCode::InvalidArgument, "mixture weights must be nonnegative");
      }
      total += part.weight;
      const auto& d = part.sds->valid_domain();
      if (d.n() != parts.front().sds->n() || d.m() != parts.front().sds->m()) {
        throw Error(ErrorCode::SizeMismatch, "mixture parts disagree on (n, m)");
      }
      if (d.kind() == DomainSpec::Kind::Full) continue;
      if (restrictive && !(*restrictive == d)) {
        throw Error(ErrorCode::InvalidArgument, "mixture parts are defined on different restricted domains");
      }
      restrictive = &d;
    }
    if (total != 1) throw Error(ErrorCode::InvalidArgument, "mixture weights sum to " + to_string(total));
    const auto& first = parts.front().sds;
    Sds s(kind, restrictive ? *restrictive : DomainSpec::full(first->n(), first->m()));
    s.parts_ = std::move(parts);
    return s;
  }

  Kind kind_;
  DomainSpec valid_domain_;
  Voter dictator_{};
  std::vector<Rational> weights_;
  std::optional<TieBreaker> tie_breaker_;
  std::vector<WeightedSds> parts_;
  std::shared_ptr<const TableMap> table_;
};

inline WeightedSds weighted(Rational w, Sds sds) { return {std::move(w), std::make_shared<const Sds>(std::move(sds))}; }

namespace detail {
inline Lottery uniform_over_maxima(int m, const std::vector<long>& score) {
  long best = score.front();
  for (long s : score) best = std::max(best, s);
  AltSet winners;
  for (int x = 0; x < m; ++x) {
    if (score[x] == best) winners.insert(Alternative{x});
  }
  return Lottery::uniform(m, winners);
}

inline Lottery evaluate_unchecked(const Sds& sds, const Profile& profile);

inline std::vector<WeightedLottery> evaluate_parts(const Sds& sds, const Profile& profile) {
  std::vector<WeightedLottery> parts;
  for (const auto& part : sds.parts()) parts.emplace_back(part.weight, evaluate_unchecked(*part.sds, profile));
  return parts;
}

inline Lottery evaluate_unchecked(const Sds& sds, const Profile& profile) {
  const int m = sds.m();
  switch (sds.kind()) {
    case Sds::Kind::Dictatorship: return Lottery::point(m, profile.voter(sds.dictator()).top());
    case Sds::Kind::RandomDictatorship: {
      std::vector<Rational> p(m, Rational(0));
      for (int i = 0; i < profile.n(); ++i) p[profile[i].top().index] += sds.weights()[i];
      return Lottery(std::move(p));
    }
    case Sds::Kind::Condorcet: {
      auto w = condorcet_winner(profile);
      if (!w) throw Error(ErrorCode::OutOfDomain, "no Condorcet winner in " + to_inline_string(profile));
      return Lottery::point(m, *w);
    }
    case Sds::Kind::TieBreakingCondorcet: {
      auto w = tie_broken_winner(profile, sds.tie_breaker());
      if (!w) throw Error(ErrorCode::OutOfDomain, "no tie-broken winner in " + to_inline_string(profile));
      return Lottery::point(m, *w);
    }
    case Sds::Kind::Mixture: return mix(evaluate_parts(sds, profile));
    case Sds::Kind::SignedMixture: return affine_combine(evaluate_parts(sds, profile));
    case Sds::Kind::Plurality: {
      std::vector<long> score(m, 0);
      for (const auto& r : profile.relations()) ++score[r.top().index];
      return uniform_over_maxima(m, score);
    }
    case Sds::Kind::Borda: {
      std::vector<long> score(m, 0);
      for (const auto& r : profile.relations()) {
        for (int pos = 0; pos < m; ++pos) score[r.at(pos).index] += m - 1 - pos;
      }
      return uniform_over_maxima(m, score);
    }
    case Sds::Kind::Table: {
      auto it = sds.table_entries().find(profile);
      if (it == sds.table_entries().end()) {
        throw Error(ErrorCode::TableMiss, "table has no entry for " + to_inline_string(profile));
      }
      return it->second;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown SDS kind");
}
}  // namespace detail

/// f(R). Refuses profiles outside the rule's declared domain.
inline Lottery evaluate(const Sds& sds, const Profile& profile) {
  sds.valid_domain().check_shape(profile);
  if (!contains(sds.valid_domain(), profile)) {
    if (sds.kind() == Sds::Kind::Table) {
      throw Error(ErrorCode::TableMiss, "table has no entry for " + to_inline_string(profile));
    }
    throw Error(ErrorCode::OutOfDomain,
                to_inline_string(profile) + " is outside " + sds.valid_domain().describe() + ", where " +
                    sds.describe() + " is defined");
  }
  return detail::evaluate_unchecked(sds, profile);
}

/// sum_i 1/(n-1) d_i - 1/(n-1) COND on the Condorcet domain, n even, m = 3.
inline Sds counterexample_sds(int n, int m) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::ParityMismatch, "the signed counterexample needs an even n");
  if (m != 3) throw Error(ErrorCode::InvalidArgument, "the signed counterexample is only well-defined for m = 3");
  std::vector<WeightedSds> parts;
  const Rational w(1, n - 1);
  for (int i = 0; i < n; ++i) parts.push_back(weighted(w, Sds::dictatorship(n, m, Voter{i})));
  parts.push_back(weighted(-w, Sds::condorcet(n, m)));
  return Sds::signed_mixture(std::move(parts));
}

/// gamma_C * reference + sum_i gamma_i * d_i, built as a (signed if needed) mixture.
inline Sds coefficient_mixture(const Rational& gamma_c, const std::vector<Rational>& gamma, const Sds& reference) {
  const int n = reference.n();
  const int m = reference.m();
  std::vector<WeightedSds> parts;
  bool signed_needed = gamma_c < 0;
  if (gamma_c != 0) parts.push_back(weighted(gamma_c, reference));
  for (int i = 0; i < n; ++i) {
    if (gamma.at(i) < 0) signed_needed = true;
    if (gamma[i] != 0) parts.push_back(weighted(gamma[i], Sds::dictatorship(n, m, Voter{i})));
  }
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "all coefficients are zero");
  return signed_needed ? Sds::signed_mixture(std::move(parts)) : Sds::mixture(std::move(parts));
}

inline std::string Sds::describe() const {
  switch (kind_) {
    case Kind::Dictatorship: return "dict:" + std::to_string(dictator_.index + 1);
    case Kind::RandomDictatorship: {
      std::string out = "rd:";
      for (std::size_t k = 0; k < weights_.size(); ++k) out += (k ? "," : "") + to_string(weights_[k]);
      return out;
    }
    case Kind::Condorcet: return "cond";
    case Kind::TieBreakingCondorcet: return "tb-cond:" + to_string(tie_breaker_->order);
    case Kind::Mixture:
    case Kind::SignedMixture: {
      std::string out = kind_ == Kind::Mixture ? "mix:" : "signed:";
      for (std::size_t k = 0; k < parts_.size(); ++k) {
        if (k) out += "+";
        const std::string inner = parts_[k].sds->describe();
        const bool nested = inner.find('+') != std::string::npos;
        out += to_string(parts_[k].weight) + "*" + (nested ? "(" + inner + ")" : inner);
      }
      return out;
    }
    case Kind::Plurality: return "plurality";
    case Kind::Borda: return "borda";
    case Kind::Table: return "table(" + std::to_string(table_->size()) + " entries)";
  }
  return "?";
}

/// Lottery JSON: {"a": "1/3", "b": "2/3"}; zero entries are omitted on output.
inline nlohmann::json lottery_to_json(const Lottery& p) {
  nlohmann::json j = nlohmann::json::object();
  for (int k = 0; k < p.size(); ++k) {
    const Alternative x{k};
    if (p[x] != 0) j[std::string(1, letter(x))] = to_string(p[x]);
  }
  return j;
}

inline Lottery lottery_from_json(const nlohmann::json& j, int m) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "lottery JSON must be an object");
  std::vector<Rational> p(m, Rational(0));
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw Error(ErrorCode::Parse, "lottery values must be \"p/q\" strings");
    p[parse_alternative(key, m).index] = parse_rational(value.get<std::string>());
  }
  try {
    return Lottery(std::move(p));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid lottery: ") + e.what());
  }
}

/// Table file: entries of n voter lines followed by one lottery JSON line.
inline Sds::TableMap parse_table(std::string_view text, int n, int m) {
  Sds::TableMap entries;
  std::vector<PreferenceRelation> pending;
  for (const auto& line : content_lines(text)) {
    if (line.front() == '{') {
      if (static_cast<int>(pending.size()) != n) {
        throw Error(ErrorCode::Parse, "table entry has " + std::to_string(pending.size()) + " voters, expected " +
                                          std::to_string(n));
      }
      Profile key(std::move(pending));
      pending.clear();
      if (key.m() != m) throw Error(ErrorCode::SizeMismatch, "table profile has wrong m");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad lottery JSON: ") + e.what());
      }
      if (!entries.emplace(key, lottery_from_json(j, m)).second) {
        throw Error(ErrorCode::Parse, "duplicate table entry for " + to_inline_string(key));
      }
    } else {
      pending.push_back(parse_relation(line));
    }
  }
  if (!pending.empty()) throw Error(ErrorCode::Parse, "table ends with a profile that has no lottery");
  return entries;
}

inline std::string format_table(const Sds::TableMap& entries) {
  std::string out;
  for (const auto& [profile, lottery] : entries) {
    out += to_string(profile);
    out += lottery_to_json(lottery).dump();
    out += "\n\n";
  }
  return out;
}

namespace detail {
/// Splits on '+' outside parentheses.
inline std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw Error(ErrorCode::Parse, "unbalanced parentheses in '" + text + "'");
    if (ch == '+' && depth == 0 && !current.empty()) {
      out.push_back(current);
      current.clear();
      continue;
    }
    current += ch;
  }
  if (depth != 0) throw Error(ErrorCode::Parse, "unbalanced parentheses in '" + text + "'");
  if (current.empty()) throw Error(ErrorCode::Parse, "empty term in '" + text + "'");
  out.push_back(current);
  return out;
}
}  // namespace detail

/// Grammar: cond | tb-cond:<order> | dict:<i> | rd:<w1,...,wn> | mix:<w1*spec1+...> |
/// signed:<...> | plurality | borda | table:<path>. Nested mixtures go in parentheses.
inline Sds parse_sds(const std::string& text, int n, int m) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') return parse_sds(text.substr(1, text.size() - 2), n, m);
  if (text == "cond") return Sds::condorcet(n, m);
  if (text == "plurality") return Sds::plurality(n, m);
  if (text == "borda") return Sds::borda(n, m);
  if (text.rfind("tb-cond:", 0) == 0) {
    auto order = parse_relation(text.substr(8));
    if (order.size() != m) throw Error(ErrorCode::SizeMismatch, "tie-breaker ranks a different m");
    return Sds::tie_breaking_condorcet(n, TieBreaker{std::move(order)});
  }
  if (text.rfind("dict:", 0) == 0) {
    const std::string idx = text.substr(5);
    if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::Parse, "dictator index must be a positive integer");
    }
    return Sds::dictatorship(n, m, Voter{std::stoi(idx) - 1});
  }
  if (text.rfind("rd:", 0) == 0) {
    std::vector<Rational> w;
    std::stringstream in(text.substr(3));
    std::string item;
    while (std::getline(in, item, ',')) w.push_back(parse_rational(item));
    return Sds::random_dictatorship(n, m, std::move(w));
  }
  if (text.rfind("table:", 0) == 0) return Sds::table(n, m, parse_table(read_text_file(text.substr(6)), n, m));
  const bool is_mix = text.rfind("mix:", 0) == 0;
  const bool is_signed = text.rfind("signed:", 0) == 0;
  if (is_mix || is_signed) {
    std::vector<WeightedSds> parts;
    for (const auto& term : detail::split_top_level(text.substr(is_mix ? 4 : 7))) {
      const auto star = term.find('*');
      if (star == std::string::npos) throw Error(ErrorCode::Parse, "mixture term '" + term + "' lacks 'w*'");
      parts.push_back(weighted(parse_rational(term.substr(0, star)), parse_sds(term.substr(star + 1), n, m)));
    }
    return is_mix ? Sds::mixture(std::move(parts)) : Sds::signed_mixture(std::move(parts));
  }
  throw Error(ErrorCode::Parse, "unknown SDS '" + text + "'");
}

}  // namespace condlab

#endif  // CONDLAB_SDS_HPP
