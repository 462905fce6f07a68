#ifndef CONDLAB_THEOREMS_HPP
#define CONDLAB_THEOREMS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "condlab/serialize.hpp"

namespace condlab {

/// All (gamma_c, gamma_1..gamma_n) with entries in {0, step, 2 step, ..., 1}
/// summing to one, in lexicographic order of (gamma_c, gamma_1, ...).
inline std::vector<CoefficientVector> coefficient_grid(int n, const Rational& step) {
  if (step <= 0 || step > 1) throw Error(ErrorCode::InvalidArgument, "grid step must lie in (0, 1]");
  const Rational inv = 1 / step;
  if (inv.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "grid step must be 1/k for an integer k");
  const long k = inv.get_num().get_si();
  std::vector<CoefficientVector> out;
  std::vector<long> parts(n + 1, 0);
  std::function<void(int, long)> rec = [&](int idx, long left) {
    if (idx == n) {
      parts[n] = left;
      CoefficientVector cv;
      cv.gamma_c = step * parts[0];
      for (int i = 1; i <= n; ++i) cv.gamma.push_back(step * parts[i]);
      out.push_back(std::move(cv));
      return;
    }
    for (long v = 0; v <= left; ++v) {
      parts[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, k);
  return out;
}

inline int positive_count(const CoefficientVector& cv) {
  int c = cv.gamma_c > 0 ? 1 : 0;
  for (const auto& g : cv.gamma) c += g > 0 ? 1 : 0;
  return c;
}

inline std::string describe_coefficients(const CoefficientVector& cv) {
  std::string s = "(" + to_string(cv.gamma_c) + ";";
  for (std::size_t i = 0; i < cv.gamma.size(); ++i) s += (i ? "," : "") + to_string(cv.gamma[i]);
  return s + ")";
}

struct BatteryItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct BatteryReport {
  std::string battery;
  std::vector<BatteryItem> items;

  bool passed() const {
    return std::all_of(items.begin(), items.end(), [](const BatteryItem& i) { return i.passed; });
  }

  void add(std::string name, bool ok, std::string detail = {}) {
    items.push_back({std::move(name), ok, std::move(detail)});
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"battery", battery}, {"passed", passed()}};
    j["items"] = nlohmann::json::array();
    for (const auto& i : items) {
      nlohmann::json e{{"name", i.name}, {"passed", i.passed}};
      if (!i.detail.empty()) e["detail"] = i.detail;
      j["items"].push_back(e);
    }
    return j;
  }
};

/// Grid mixtures of the reference rule and dictatorships: SP, non-imposition and
/// (optionally) ex post efficiency on dom, anchor-independent probes that
/// reproduce the grid point, and an exhaustive representation check.
inline void mixture_grid_items(BatteryReport& report, const DomainSpec& dom, const Sds& reference,
                               const Rational& step, bool with_efficiency, const Limits& limits) {
  for (const auto& cv : coefficient_grid(dom.n(), step)) {
    const Sds f = coefficient_mixture(cv.gamma_c, cv.gamma, reference);
    const EvaluatedDomain ed(f, dom, limits);
    const bool sp = check_strategyproof(ed, limits.threads).holds;
    const bool ni = check_non_imposition(ed).holds;
    const bool ep = !with_efficiency || check_ex_post_efficiency(ed).holds;
    bool probes = true;
    for (int a = 0; a < dom.m(); ++a) probes = probes && probe_coefficients(f, Alternative{a}) == cv;
    const bool rep = verify_mixture(f, dom, cv, reference, limits).holds;
    std::string detail = std::string("sp=") + (sp ? "1" : "0") + " non-imposition=" + (ni ? "1" : "0") +
                         (with_efficiency ? std::string(" ex-post=") + (ep ? "1" : "0") : std::string()) +
                         " probes=" + (probes ? "1" : "0") + " representation=" + (rep ? "1" : "0");
    report.add("mixture " + describe_coefficients(cv), sp && ni && ep && probes && rep, detail);
  }
}

/// Strategyproof mixtures of COND and dictatorships on D_C (odd n); with odd n
/// also the single-profile extension by R*: infeasible exactly when gamma_c > 0.
inline BatteryReport theorem1_battery(int n, int m, const Rational& step, const Limits& limits = {}) {
  if (n % 2 == 0) throw Error(ErrorCode::ParityMismatch, "the Condorcet-domain battery needs an odd n");
  BatteryReport report;
  report.battery = "condorcet-domain mixtures n=" + std::to_string(n) + " m=" + std::to_string(m);
  const DomainSpec dom = DomainSpec::condorcet(n, m);
  const Sds cond = Sds::condorcet(n, m);
  mixture_grid_items(report, dom, cond, step, true, limits);
  const Profile star = r_star_profile(n, m);
  for (const auto& cv : coefficient_grid(n, step)) {
    const Sds f = coefficient_mixture(cv.gamma_c, cv.gamma, cond);
    const auto res = extension_feasibility(f, dom, {star}, false, limits);
    const bool expect_feasible = cv.gamma_c == 0;
    bool ok = res.feasible == expect_feasible;
    if (ok && res.feasible) ok = verify_extension_assignment(f, dom, res.witness, limits).holds;
    report.add("extension by R* " + describe_coefficients(cv), ok, res.feasible ? "feasible" : "infeasible");
  }
  return report;
}

/// Same structure on the tie-breaking Condorcet domain for even n.
inline BatteryReport theorem2_battery(int n, const TieBreaker& tb, const Rational& step, const Limits& limits = {}) {
  if (n % 2 != 0) throw Error(ErrorCode::ParityMismatch, "the tie-breaking battery needs an even n");
  BatteryReport report;
  report.battery = "tie-breaking mixtures n=" + std::to_string(n) + " tb=" + to_string(tb.order);
  const DomainSpec dom = DomainSpec::tie_breaking(n, tb);
  mixture_grid_items(report, dom, Sds::tie_breaking_condorcet(n, tb), step, false, limits);
  return report;
}

/// Whole-electorate deviation from (voter i: c,a,b,..; others: b,a,c,..) to
/// unanimous (a,b,c,..), with a, b, c the first three alternatives.
inline ManipulationWitness electorate_deviation_pattern(int n, int m, Voter i) {
  std::vector<PreferenceRelation> truthful(n, relation_with_prefix(m, {1, 0, 2}));
  truthful[i.index] = relation_with_prefix(m, {2, 0, 1});
  std::vector<PreferenceRelation> lie(n, relation_with_prefix(m, {0, 1, 2}));
  ManipulationWitness w{Profile(truthful), Profile(lie), {}, {}};
  for (int j = 0; j < n; ++j) {
    w.coalition.push_back(Voter{j});
    w.cuts.push_back(Alternative{0});
  }
  return w;
}

/// Lottery with small random integer weights; deterministic in the generator state.
inline Lottery sampled_lottery(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, 12);
  while (true) {
    std::vector<long> w(m);
    long total = 0;
    for (auto& x : w) {
      x = dist(rng);
      total += x;
    }
    if (total == 0) continue;
    std::vector<Rational> probs;
    for (long x : w) probs.push_back(make_rational(x, total));
    return Lottery(std::move(probs));
  }
}

/// Group-strategyproofness on D_C: COND and dictatorships pass; grid mixtures
/// with two positive weights fail, those with some gamma_i in (0,1) via the
/// whole-electorate pattern. With odd n, COND extended to R* fails for sampled
/// lotteries while dictatorships still pass.
inline BatteryReport theorem3_battery(int n, int m, const Rational& step, std::uint64_t seed, int samples = 10,
                                      const Limits& limits = {}) {
  BatteryReport report;
  report.battery = "group strategyproofness n=" + std::to_string(n) + " m=" + std::to_string(m);
  const DomainSpec dom = DomainSpec::condorcet(n, m);
  const Sds cond = Sds::condorcet(n, m);
  report.add("cond group-strategyproof", check_group_strategyproof(cond, dom, n, limits).holds);
  for (int i = 0; i < n; ++i) {
    const Sds d = Sds::dictatorship(n, m, Voter{i});
    report.add("dict:" + std::to_string(i + 1) + " group-strategyproof", check_group_strategyproof(d, dom, n, limits).holds);
  }
  for (const auto& cv : coefficient_grid(n, step)) {
    if (positive_count(cv) < 2) continue;
    const Sds f = coefficient_mixture(cv.gamma_c, cv.gamma, cond);
    const Verdict v = check_group_strategyproof(f, dom, n, limits);
    bool ok = !v.holds && v.witness && reproduces(f, std::get<ManipulationWitness>(*v.witness));
    std::string detail;
    if (v.witness) {
      const auto& w = std::get<ManipulationWitness>(*v.witness);
      detail = "coalition size " + std::to_string(w.coalition.size());
    }
    for (int i = 0; i < n; ++i) {
      if (cv.gamma[i] > 0 && cv.gamma[i] < 1) {
        const auto pattern = electorate_deviation_pattern(n, m, Voter{i});
        const bool hit = contains(dom, pattern.truthful) && reproduces(f, pattern);
        ok = ok && hit;
        detail += std::string(", pattern voter ") + std::to_string(i + 1) + (hit ? " reproduces" : " fails");
      }
    }
    report.add("mixture " + describe_coefficients(cv) + " manipulable", ok, detail);
  }
  if (n % 2 == 1) {
    const Profile star = r_star_profile(n, m);
    const DomainSpec ext = DomainSpec::extended(dom, {star});
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
      const Lottery p = sampled_lottery(m, rng);
      const Sds f = extend_sds(cond, dom, {{star, p}}, limits);
      const Verdict v = check_group_strategyproof(f, ext, n, limits);
      report.add("cond + " + to_string(p) + " at R* manipulable", !v.holds);
    }
    for (int i = 0; i < n; ++i) {
      const Sds d = Sds::dictatorship(n, m, Voter{i});
      report.add("dict:" + std::to_string(i + 1) + " on condorcet + R*", check_group_strategyproof(d, ext, n, limits).holds);
    }
  }
  return report;
}

}  // namespace condlab

#endif  // CONDLAB_THEOREMS_HPP
