#ifndef CONDLAB_ANALYSIS_HPP
#define CONDLAB_ANALYSIS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condlab/axioms.hpp"
#include "condlab/lp.hpp"

namespace condlab {

/// Weights of a representation f = gamma_c * reference + sum_i gamma[i] * d_i.
/// gamma_c may be negative.
struct CoefficientVector {
  Rational gamma_c;
  std::vector<Rational> gamma;

  Rational total() const {
    Rational s = gamma_c;
    for (const auto& g : gamma) s += g;
    return s;
  }

  bool nonnegative() const {
    return gamma_c >= 0 && std::all_of(gamma.begin(), gamma.end(), [](const Rational& g) { return g >= 0; });
  }

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

/// Probe profile for voter i: i ranks (c, anchor, b, rest), everyone else
/// (anchor, b, c, rest), where b < c are the two smallest non-anchor indices.
inline Profile probe_profile(int n, int m, Alternative anchor, Voter i) {
  if (m < 3) throw Error(ErrorCode::InvalidArgument, "probing needs at least three alternatives");
  if (anchor.index < 0 || anchor.index >= m) throw Error(ErrorCode::InvalidAlternative, "anchor out of range");
  if (i.index < 0 || i.index >= n) throw Error(ErrorCode::InvalidArgument, "voter out of range");
  std::vector<int> others;
  for (int x = 0; x < m; ++x) {
    if (x != anchor.index) others.push_back(x);
  }
  const int b = others[0];
  const int c = others[1];
  const auto probe = relation_with_prefix(m, {c, anchor.index, b});
  const auto rest = relation_with_prefix(m, {anchor.index, b, c});
  std::vector<PreferenceRelation> rel(n, rest);
  rel[i.index] = probe;
  return Profile(std::move(rel));
}

inline CoefficientVector probe_coefficients(const Sds& sds, Alternative anchor) {
  const int n = sds.n();
  const int m = sds.m();
  CoefficientVector cv;
  cv.gamma.reserve(n);
  Rational sum = 0;
  for (int i = 0; i < n; ++i) {
    const Profile probe = probe_profile(n, m, anchor, Voter{i});
    const Lottery p = evaluate(sds, probe);
    const Alternative c = probe[i].top();
    cv.gamma.push_back(p[c]);
    sum += p[c];
  }
  cv.gamma_c = 1 - sum;
  return cv;
}

/// Checks f(R) == gamma_c * reference(R) + sum_i gamma_i * d_i(R) at every member.
inline Verdict verify_mixture(const Sds& sds, const DomainSpec& dom, const CoefficientVector& coeffs,
                              const Sds& reference, const Limits& limits = {}) {
  if (static_cast<int>(coeffs.gamma.size()) != dom.n()) {
    throw Error(ErrorCode::SizeMismatch, "coefficient vector length differs from n");
  }
  Verdict v;
  v.axiom = "mixture-representation";
  for_each_member(dom, limits, [&](const Profile& profile) {
    if (!v.holds) return;
    ++v.profiles_checked;
    const Lottery lhs = evaluate(sds, profile);
    const Lottery ref = evaluate(reference, profile);
    std::vector<Rational> rhs(dom.m());
    for (int x = 0; x < dom.m(); ++x) rhs[x] = coeffs.gamma_c * ref[Alternative{x}];
    for (int i = 0; i < dom.n(); ++i) rhs[profile[i].top().index] += coeffs.gamma[i];
    for (int x = 0; x < dom.m(); ++x) {
      ++v.comparisons;
      if (lhs[Alternative{x}] != rhs[x]) {
        v.holds = false;
        v.witness = MixtureWitness{profile, Alternative{x}, lhs[Alternative{x}], rhs[x]};
        return;
      }
    }
  });
  return v;
}

/// Largest total weight sum_i beta_i such that f - sum_i beta_i d_i is a
/// nonnegative, SD-strategyproof remainder on dom.
///
/// The remainder h(R, x) = f(R, x) - sum_{i : top_i(R) = x} beta_i is affine in
/// beta, so the only LP variables are the n dictator weights; its row sums
/// equal 1 - sum beta automatically.
inline Rational gamma_random_dictatorial(const Sds& sds, const DomainSpec& dom, const Limits& limits = {}) {
  const EvaluatedDomain ed(sds, dom, limits);
  const int n = ed.n();
  const int m = ed.m();
  LinearProgram lp(n);
  for (std::size_t k = 0; k < ed.size(); ++k) {
    const Profile& r = ed.member(k);
    // h(R, x) >= 0
    for (int x = 0; x < m; ++x) {
      std::vector<std::pair<int, Rational>> terms;
      for (int i = 0; i < n; ++i) {
        if (r[i].top().index == x) terms.emplace_back(i, Rational(1));
      }
      lp.add_leq(std::move(terms), ed.lottery(k)[Alternative{x}], "nonnegative remainder");
    }
  }
  for (std::size_t k = 0; k < ed.size(); ++k) {
    const Profile& truthful = ed.member(k);
    for (int i = 0; i < n; ++i) {
      const PreferenceRelation& pref = truthful[i];
      const std::uint64_t own = ed.relation_rank(k, i);
      for (std::uint64_t rk = 0; rk < ed.relation_count(); ++rk) {
        if (rk == own) continue;
        const auto j = ed.find_code(ed.code_with(k, i, rk));
        if (!j) continue;
        const Profile& lie = ed.member(*j);
        // h(R, U) - h(R', U) >= 0 for every proper upper contour set U of voter i.
        Rational constant = 0;
        std::vector<Rational> coeff(n, Rational(0));
        for (int pos = 0; pos + 1 < m; ++pos) {
          const Alternative x = pref.at(pos);
          constant += ed.lottery(k)[x] - ed.lottery(*j)[x];
          for (int d = 0; d < n; ++d) {
            if (truthful[d].top() == x) coeff[d] -= 1;
            if (lie[d].top() == x) coeff[d] += 1;
          }
          // constant + coeff . beta >= 0
          std::vector<std::pair<int, Rational>> terms;
          for (int d = 0; d < n; ++d) terms.emplace_back(d, coeff[d]);
          lp.add_geq(std::move(terms), -constant, "strategyproof remainder");
        }
      }
    }
  }
  const LpSolution sol = lp.maximize(std::vector<Rational>(n, Rational(1)));
  if (sol.status == LpStatus::Infeasible) {
    throw Error(ErrorCode::InfeasibleModel, sds.describe() + " is not strategyproof on " + dom.describe());
  }
  if (sol.status == LpStatus::Unbounded) {
    throw Error(ErrorCode::InfeasibleModel, "dictator weights unbounded; no member profile constrains them");
  }
  return sol.value;
}

// ---------------------------------------------------------------------------
// Strategyproof extension to a super domain

using ExtensionAssignment = std::map<Profile, Lottery>;

struct FeasibilityResult {
  bool feasible = false;
  ExtensionAssignment witness;
  /// Irreducible infeasible subset of the emitted rows when infeasible.
  std::vector<LinearConstraint> conflict;
  std::size_t constraints = 0;
  std::size_t variables = 0;
};

namespace detail {

struct ExtensionModel {
  LinearProgram lp{0};
  std::vector<Profile> extras;
};

inline std::string cut_label(const PreferenceRelation& pref, int pos) {
  std::string s = "{";
  for (int q = 0; q <= pos; ++q) s += letter(pref.at(q));
  return s + "}";
}

/// Variables: p_E(x) at index e * m + x for the e-th extra profile E.
inline ExtensionModel build_extension_model(const Sds& base_sds, const DomainSpec& base,
                                            const std::vector<Profile>& extras_in) {
  const DomainSpec ext = DomainSpec::extended(base, extras_in);
  const int n = base.n();
  const int m = base.m();
  ExtensionModel model;
  model.extras = ext.profiles();
  const int vars = static_cast<int>(model.extras.size()) * m;
  model.lp = LinearProgram(vars);
  std::map<Profile, int> slot;
  for (std::size_t e = 0; e < model.extras.size(); ++e) slot.emplace(model.extras[e], static_cast<int>(e));

  // Mass on the cut as (variable terms, constant).
  auto cut_mass = [&](const Profile& at, const PreferenceRelation& pref, int pos) {
    std::vector<std::pair<int, Rational>> terms;
    Rational constant = 0;
    if (auto s = slot.find(at); s != slot.end()) {
      for (int q = 0; q <= pos; ++q) terms.emplace_back(s->second * m + pref.at(q).index, Rational(1));
    } else {
      const Lottery p = evaluate(base_sds, at);
      for (int q = 0; q <= pos; ++q) constant += p[pref.at(q)];
    }
    return std::make_pair(terms, constant);
  };

  // truthful weakly SD-dominates lie for voter i: mass(truth, U) - mass(lie, U) >= 0.
  auto add_sp = [&](const Profile& truth, const Profile& lie, int i) {
    const PreferenceRelation& pref = truth[i];
    for (int pos = 0; pos + 1 < m; ++pos) {
      auto [t_terms, t_const] = cut_mass(truth, pref, pos);
      auto [l_terms, l_const] = cut_mass(lie, pref, pos);
      std::vector<std::pair<int, Rational>> terms = t_terms;
      for (auto [var, c] : l_terms) terms.emplace_back(var, -c);
      const std::string label = "voter " + std::to_string(i + 1) + " truthful at " + to_inline_string(truth) +
                                " vs report " + to_string(lie[i]) + ", cut " + cut_label(pref, pos);
      model.lp.add_geq(std::move(terms), l_const - t_const, label);
    }
  };

  for (std::size_t e = 0; e < model.extras.size(); ++e) {
    const Profile& extra = model.extras[e];
    std::vector<std::pair<int, Rational>> sum;
    for (int x = 0; x < m; ++x) sum.emplace_back(static_cast<int>(e) * m + x, Rational(1));
    model.lp.add_eq(sum, Rational(1), "probabilities at " + to_inline_string(extra) + " sum to one");
    for (int i = 0; i < n; ++i) {
      for (const Profile& other : unilateral_deviations(ext, extra, Voter{i})) {
        add_sp(extra, other, i);
        add_sp(other, extra, i);
      }
    }
  }
  return model;
}

}  // namespace detail

/// Strategyproof completions of base_sds onto base + extras, decided by exact LP.
/// With require_non_imposition every alternative the base never elects with
/// certainty must be elected with certainty at some extra profile; the
/// injective choices of such extras are tried in lexicographic order.
inline FeasibilityResult extension_feasibility(const Sds& base_sds, const DomainSpec& base,
                                               const std::vector<Profile>& extras,
                                               bool require_non_imposition = false, const Limits& limits = {}) {
  if (base_sds.n() != base.n() || base_sds.m() != base.m()) {
    throw Error(ErrorCode::SizeMismatch, "SDS and base domain disagree on (n, m)");
  }
  const int m = base.m();
  detail::ExtensionModel model = detail::build_extension_model(base_sds, base, extras);
  FeasibilityResult result;
  result.variables = static_cast<std::size_t>(model.lp.variables());

  auto decode = [&](const LpSolution& sol) {
    ExtensionAssignment out;
    for (std::size_t e = 0; e < model.extras.size(); ++e) {
      std::vector<Rational> probs(sol.x.begin() + static_cast<std::ptrdiff_t>(e * m),
                                  sol.x.begin() + static_cast<std::ptrdiff_t>((e + 1) * m));
      out.emplace(model.extras[e], Lottery(std::move(probs)));
    }
    return out;
  };

  std::vector<int> uncovered;
  if (require_non_imposition) {
    std::vector<bool> covered(m, false);
    for_each_member(base, limits, [&](const Profile& p) {
      const Lottery l = evaluate(base_sds, p);
      for (int x = 0; x < m; ++x) {
        if (l[Alternative{x}] == 1) covered[x] = true;
      }
    });
    for (int x = 0; x < m; ++x) {
      if (!covered[x]) uncovered.push_back(x);
    }
  }

  result.constraints = model.lp.constraints().size();
  if (uncovered.empty()) {
    const LpSolution sol = model.lp.find_feasible();
    if (sol.status != LpStatus::Infeasible) {
      result.feasible = true;
      result.witness = decode(sol);
      return result;
    }
    for (std::size_t k : model.lp.irreducible_infeasible_subset()) result.conflict.push_back(model.lp.constraints()[k]);
    return result;
  }

  const std::size_t extra_count = model.extras.size();
  if (uncovered.size() > extra_count) {
    result.conflict.push_back(LinearConstraint{{}, Rational(-1),
                                               std::to_string(uncovered.size()) +
                                                   " alternatives need an extra profile electing them, only " +
                                                   std::to_string(extra_count) + " extras"});
    return result;
  }
  // Enumerate injective maps uncovered -> extras.
  std::vector<std::size_t> choice(uncovered.size(), 0);
  std::vector<bool> used(extra_count, false);
  std::optional<LinearProgram> last_failure;
  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == uncovered.size()) {
      LinearProgram lp = model.lp;
      for (std::size_t d = 0; d < uncovered.size(); ++d) {
        const int var = static_cast<int>(choice[d]) * m + uncovered[d];
        lp.add_eq({{var, Rational(1)}}, Rational(1),
                  std::string("non-imposition: ") + letter(Alternative{uncovered[d]}) + " elected at " +
                      to_inline_string(model.extras[choice[d]]));
      }
      const LpSolution sol = lp.find_feasible();
      if (sol.status != LpStatus::Infeasible) {
        result.feasible = true;
        result.witness = decode(sol);
        result.constraints = lp.constraints().size();
        return true;
      }
      if (!last_failure) last_failure = lp;
      return false;
    }
    for (std::size_t e = 0; e < extra_count; ++e) {
      if (used[e]) continue;
      used[e] = true;
      choice[depth] = e;
      if (search(depth + 1)) return true;
      used[e] = false;
    }
    return false;
  };
  if (search(0)) return result;
  if (last_failure) {
    for (std::size_t k : last_failure->irreducible_infeasible_subset()) {
      result.conflict.push_back(last_failure->constraints()[k]);
    }
  }
  return result;
}

/// The SDS equal to base_sds on base and to the assignment on the extras, as a table.
inline Sds extend_sds(const Sds& base_sds, const DomainSpec& base, const ExtensionAssignment& assignment,
                      const Limits& limits = {}) {
  Sds::TableMap entries;
  for_each_member(base, limits, [&](const Profile& p) { entries.emplace(p, evaluate(base_sds, p)); });
  for (const auto& [profile, lottery] : assignment) {
    if (contains(base, profile)) {
      throw Error(ErrorCode::InvalidArgument, to_inline_string(profile) + " already lies in the base domain");
    }
    entries.emplace(profile, lottery);
  }
  return Sds::table(base.n(), base.m(), std::move(entries));
}

/// Exact re-check of an assignment: the extended SDS is strategyproof on base + extras.
inline Verdict verify_extension_assignment(const Sds& base_sds, const DomainSpec& base,
                                           const ExtensionAssignment& assignment, const Limits& limits = {}) {
  std::vector<Profile> extras;
  for (const auto& entry : assignment) extras.push_back(entry.first);
  const DomainSpec ext = DomainSpec::extended(base, extras);
  return check_strategyproof(extend_sds(base_sds, base, assignment, limits), ext, limits);
}

/// Profiles outside dom from which no single voter can move into dom.
inline std::vector<Profile> isolated_profiles(const DomainSpec& dom, const Limits& limits = {}) {
  const DomainSpec full = DomainSpec::full(dom.n(), dom.m());
  const std::uint64_t count = factorial(dom.m());
  std::vector<PreferenceRelation> relations;
  for (std::uint64_t r = 0; r < count; ++r) relations.push_back(PreferenceRelation::from_lex_rank(dom.m(), r));
  std::vector<Profile> out;
  for_each_member(full, limits, [&](const Profile& p) {
    if (contains(dom, p)) return;
    for (int i = 0; i < p.n(); ++i) {
      for (const auto& rel : relations) {
        if (rel == p[i]) continue;
        if (contains(dom, p.with_voter(Voter{i}, rel))) return;
      }
    }
    out.push_back(p);
  });
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json coefficients_to_json(const CoefficientVector& cv) {
  nlohmann::json j;
  j["gamma_C"] = to_string(cv.gamma_c);
  j["gamma"] = nlohmann::json::array();
  for (const auto& g : cv.gamma) j["gamma"].push_back(to_string(g));
  return j;
}

inline CoefficientVector coefficients_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("gamma_C") || !j.contains("gamma") || !j["gamma"].is_array()) {
    throw Error(ErrorCode::Parse, "coefficient JSON needs gamma_C and a gamma array");
  }
  CoefficientVector cv;
  cv.gamma_c = parse_rational(j["gamma_C"].get<std::string>());
  for (const auto& g : j["gamma"]) cv.gamma.push_back(parse_rational(g.get<std::string>()));
  return cv;
}

inline nlohmann::json feasibility_to_json(const FeasibilityResult& r) {
  nlohmann::json j;
  j["feasible"] = r.feasible;
  j["constraints"] = r.constraints;
  j["variables"] = r.variables;
  if (r.feasible) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [profile, lottery] : r.witness) w[to_inline_string(profile)] = lottery_to_json(lottery);
    j["witness"] = w;
  } else {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& row : r.conflict) c.push_back(row.label);
    j["conflict"] = c;
  }
  return j;
}

}  // namespace condlab

#endif  // CONDLAB_ANALYSIS_HPP
