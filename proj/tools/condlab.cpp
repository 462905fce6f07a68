// condlab: command-line front end for the verification toolkit.
//
// Exit codes: 0 everything holds (or is feasible), 1 a violation was found,
// 2 usage, parse or cap errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "condlab/condlab.hpp"

namespace {

using namespace condlab;
using nlohmann::json;

struct Globals {
  std::string format = "json";
  std::optional<std::uint64_t> max_profiles;
  std::optional<int> threads;
  std::uint64_t seed = 1;

  Limits limits() const {
    Limits l = Limits::from_env();
    if (max_profiles) l.max_profiles = *max_profiles;
    if (threads) l.threads = std::max(1, *threads);
    return l;
  }
};

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.format == "text") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

Sds reference_for(const DomainSpec& dom) {
  const DomainSpec& base = dom.kind() == DomainSpec::Kind::Extended ? dom.base() : dom;
  if (base.kind() == DomainSpec::Kind::TieBreakingCondorcet) {
    return Sds::tie_breaking_condorcet(dom.n(), base.tie_breaker());
  }
  return Sds::condorcet(dom.n(), dom.m());
}

std::string coefficients_text(const CoefficientVector& cv) {
  std::string s = "gamma_C = " + to_string(cv.gamma_c) + "\n";
  for (std::size_t i = 0; i < cv.gamma.size(); ++i) {
    s += "gamma_" + std::to_string(i + 1) + " = " + to_string(cv.gamma[i]) + "\n";
  }
  return s;
}

// --- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  std::string domain;
  int n = 0;
  int m = 0;
  bool count_only = false;
};

int run_enumerate(const Globals& g, const EnumerateArgs& a) {
  const DomainSpec dom = parse_domain(a.domain, a.n, a.m);
  const Limits limits = g.limits();
  json j{{"domain", dom.describe()}, {"n", a.n}, {"m", a.m}};
  std::string text;
  std::uint64_t count = 0;
  json profiles = json::array();
  for_each_member(dom, limits, [&](const Profile& p) {
    ++count;
    if (!a.count_only) {
      profiles.push_back(to_string(p));
      text += to_string(p) + "\n";
    }
  });
  j["count"] = count;
  if (!a.count_only) j["profiles"] = profiles;
  emit(g, j, a.count_only ? std::to_string(count) : text + std::to_string(count) + " profiles");
  return 0;
}

// --- check -----------------------------------------------------------------

struct CheckArgs {
  std::string axiom = "all";
  std::string sds;
  std::string domain;
  int n = 0;
  int m = 0;
  int max_coalition = 0;
  std::string replay;
};

int run_replay(const Globals& g, const CheckArgs& a) {
  const DomainSpec dom = parse_domain(a.domain, a.n, a.m);
  const Sds sds = parse_sds(a.sds, a.n, a.m);
  json in;
  try {
    in = json::parse(read_text_file(a.replay));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("witness file is not JSON: ") + e.what());
  }
  std::string axiom = a.axiom;
  json wj = in;
  if (in.contains("witness")) {
    if (in.contains("axiom")) axiom = in["axiom"].get<std::string>();
    wj = in["witness"];
  }
  if (wj.is_null()) throw Error(ErrorCode::InvalidArgument, "the verdict carries no witness to replay");
  const Witness w = witness_from_json(wj, a.m);
  const bool ok = replay_witness(sds, dom, axiom, w, g.limits());
  emit(g, json{{"replayed", ok}, {"axiom", axiom}}, ok ? "witness reproduces" : "witness does NOT reproduce");
  return ok ? 0 : 1;
}

int run_check(const Globals& g, const CheckArgs& a) {
  if (!a.replay.empty()) return run_replay(g, a);
  const DomainSpec dom = parse_domain(a.domain, a.n, a.m);
  const Sds sds = parse_sds(a.sds, a.n, a.m);
  const Limits limits = g.limits();
  const EvaluatedDomain ed(sds, dom, limits);
  const int coalition = a.max_coalition > 0 ? a.max_coalition : a.n;
  std::vector<Verdict> verdicts;
  auto want = [&](const char* name) { return a.axiom == "all" || a.axiom == name; };
  if (want("sp")) verdicts.push_back(check_strategyproof(ed, limits.threads));
  if (want("gsp")) verdicts.push_back(check_group_strategyproof(ed, coalition, limits));
  if (want("non-imposition")) verdicts.push_back(check_non_imposition(ed));
  if (want("expost")) verdicts.push_back(check_ex_post_efficiency(ed));
  if (want("localized")) verdicts.push_back(check_localized(ed));
  if (want("non-perverse")) verdicts.push_back(check_non_perverse(ed));
  bool all = true;
  std::string text;
  for (const auto& v : verdicts) {
    all = all && v.holds;
    text += verdict_to_text(v);
  }
  if (verdicts.size() == 1) {
    emit(g, verdict_to_json(verdicts.front()), text);
  } else {
    json arr = json::array();
    for (const auto& v : verdicts) arr.push_back(verdict_to_json(v));
    emit(g, arr, text);
  }
  return all ? 0 : 1;
}

// --- decompose / gamma -----------------------------------------------------

struct DecomposeArgs {
  std::string sds;
  std::string domain;
  int n = 0;
  int m = 0;
  std::string anchor;
};

int run_decompose(const Globals& g, const DecomposeArgs& a) {
  const DomainSpec dom = parse_domain(a.domain, a.n, a.m);
  const Sds sds = parse_sds(a.sds, a.n, a.m);
  const Sds reference = reference_for(dom);
  const Alternative anchor = a.anchor.empty() ? Alternative{0} : parse_alternative(a.anchor, a.m);
  const CoefficientVector cv = probe_coefficients(sds, anchor);
  bool independent = true;
  if (a.anchor.empty()) {
    for (int x = 1; x < a.m; ++x) independent = independent && probe_coefficients(sds, Alternative{x}) == cv;
  }
  const Verdict v = verify_mixture(sds, dom, cv, reference, g.limits());
  json j{{"anchor", std::string(1, letter(anchor))},
         {"coefficients", coefficients_to_json(cv)},
         {"nonnegative", cv.nonnegative()},
         {"verdict", verdict_to_json(v)}};
  if (a.anchor.empty()) j["anchor_independent"] = independent;
  std::string text = coefficients_text(cv) + verdict_to_text(v);
  if (a.anchor.empty()) text += std::string("anchor independent: ") + (independent ? "yes" : "no") + "\n";
  emit(g, j, text);
  return v.holds && independent ? 0 : 1;
}

int run_gamma(const Globals& g, const DecomposeArgs& a) {
  const DomainSpec dom = parse_domain(a.domain, a.n, a.m);
  const Sds sds = parse_sds(a.sds, a.n, a.m);
  try {
    const Rational gamma = gamma_random_dictatorial(sds, dom, g.limits());
    emit(g, json{{"gamma", to_string(gamma)}}, "gamma = " + to_string(gamma));
    return 0;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InfeasibleModel) throw;
    emit(g, json{{"gamma", nullptr}, {"reason", e.what()}}, std::string("no decomposition: ") + e.what());
    return 1;
  }
}

// --- adpath ----------------------------------------------------------------

struct AdpathArgs {
  std::string domain;
  std::string from;
  std::string to;
  std::string fix;
};

int run_adpath(const Globals& g, const AdpathArgs& a) {
  const Profile from = parse_profile(read_text_file(a.from));
  const Profile to = parse_profile(read_text_file(a.to));
  const DomainSpec dom = parse_domain(a.domain, from.n(), from.m());
  std::optional<Alternative> fixed;
  if (!a.fix.empty()) fixed = parse_alternative(a.fix, from.m());
  const AdPath path = fixed ? build_adpath_fixing(dom, from, to, *fixed) : build_adpath(dom, from, to);
  const Verdict v = validate_adpath(dom, path, fixed);
  json j = adpath_to_json(path);
  j["verdict"] = verdict_to_json(v);
  std::string text;
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    text += "# step " + std::to_string(k);
    if (k > 0) {
      const auto& s = path.swaps[k - 1];
      text += ": voter " + std::to_string(s.voter.index + 1) + " swaps " + letter(s.upper) + "," + letter(s.lower);
    }
    text += "\n" + to_string(path.steps[k]);
  }
  text += verdict_to_text(v);
  emit(g, j, text);
  return v.holds ? 0 : 1;
}

// --- extend ----------------------------------------------------------------

struct ExtendArgs {
  std::string sds;
  std::string base;
  std::string extras;
  int n = 0;
  int m = 0;
  bool non_imposition = false;
};

int run_extend(const Globals& g, const ExtendArgs& a) {
  const DomainSpec base = parse_domain(a.base, a.n, a.m);
  const Sds sds = parse_sds(a.sds, a.n, a.m);
  const auto extras = parse_profiles(read_text_file(a.extras), a.n);
  const auto res = extension_feasibility(sds, base, extras, a.non_imposition, g.limits());
  std::string text = res.feasible ? "feasible\n" : "infeasible\n";
  if (res.feasible) {
    for (const auto& [p, l] : res.witness) text += to_inline_string(p) + " -> " + to_string(l) + "\n";
  } else {
    for (const auto& row : res.conflict) text += "  " + row.label + "\n";
  }
  emit(g, feasibility_to_json(res), text);
  return res.feasible ? 0 : 1;
}

// --- theorems --------------------------------------------------------------

struct TheoremArgs {
  int which = 1;
  int n = 3;
  int m = 3;
  std::string tiebreak;
  std::string grid_step = "1/4";
  int samples = 10;
};

int run_theorems(const Globals& g, const TheoremArgs& a) {
  const Rational step = parse_rational(a.grid_step);
  const Limits limits = g.limits();
  BatteryReport report;
  switch (a.which) {
    case 1: report = theorem1_battery(a.n, a.m, step, limits); break;
    case 2: {
      const TieBreaker tb{a.tiebreak.empty() ? PreferenceRelation::identity(a.m) : parse_relation(a.tiebreak)};
      report = theorem2_battery(a.n, tb, step, limits);
      break;
    }
    case 3: report = theorem3_battery(a.n, a.m, step, g.seed, a.samples, limits); break;
    default: throw Error(ErrorCode::InvalidArgument, "--which must be 1, 2 or 3");
  }
  std::string text = report.battery + "\n";
  for (const auto& item : report.items) {
    text += std::string(item.passed ? "PASS " : "FAIL ") + item.name;
    if (!item.detail.empty()) text += "  [" + item.detail + "]";
    text += "\n";
  }
  emit(g, report.to_json(), text);
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condlab: randomized voting rules on Condorcet domains"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-profiles", g.max_profiles, "Cap on (m!)^n for full scans");
  app.add_option("--threads", g.threads, "Worker threads for checkers");
  app.add_option("--seed", g.seed, "Seed for sampled batteries");

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "List the profiles of a domain");
  enumerate->add_option("--domain", ea.domain)->required();
  enumerate->add_option("--n", ea.n)->required()->check(CLI::Range(1, 64));
  enumerate->add_option("--m", ea.m)->required()->check(CLI::Range(1, kMaxAlternatives));
  enumerate->add_flag("--count-only", ea.count_only);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Check axioms of an SDS on a domain");
  check->add_option("--axiom", ca.axiom)
      ->check(CLI::IsMember({"sp", "gsp", "non-imposition", "expost", "localized", "non-perverse", "all"}));
  check->add_option("--sds", ca.sds)->required();
  check->add_option("--domain", ca.domain)->required();
  check->add_option("--n", ca.n)->required()->check(CLI::Range(1, 64));
  check->add_option("--m", ca.m)->required()->check(CLI::Range(1, kMaxAlternatives));
  check->add_option("--max-coalition", ca.max_coalition)->check(CLI::PositiveNumber);
  check->add_option("--replay", ca.replay, "Re-validate a witness (verdict JSON or bare witness)");

  DecomposeArgs da;
  auto* decompose = app.add_subcommand("decompose", "Probe and verify mixture coefficients");
  decompose->add_option("--sds", da.sds)->required();
  decompose->add_option("--domain", da.domain)->required();
  decompose->add_option("--n", da.n)->required()->check(CLI::Range(1, 64));
  decompose->add_option("--m", da.m)->required()->check(CLI::Range(3, kMaxAlternatives));
  decompose->add_option("--anchor", da.anchor);

  DecomposeArgs ga;
  auto* gamma = app.add_subcommand("gamma", "Largest random-dictatorship weight");
  gamma->add_option("--sds", ga.sds)->required();
  gamma->add_option("--domain", ga.domain)->required();
  gamma->add_option("--n", ga.n)->required()->check(CLI::Range(1, 64));
  gamma->add_option("--m", ga.m)->required()->check(CLI::Range(1, kMaxAlternatives));

  AdpathArgs pa;
  auto* adpath = app.add_subcommand("adpath", "Build and validate an ad-path");
  adpath->add_option("--domain", pa.domain)->required();
  adpath->add_option("--from", pa.from)->required();
  adpath->add_option("--to", pa.to)->required();
  adpath->add_option("--fix", pa.fix);

  ExtendArgs xa;
  auto* extend = app.add_subcommand("extend", "Strategyproof extension feasibility");
  extend->add_option("--sds", xa.sds)->required();
  extend->add_option("--base", xa.base)->required();
  extend->add_option("--extras", xa.extras)->required();
  extend->add_option("--n", xa.n)->required()->check(CLI::Range(1, 64));
  extend->add_option("--m", xa.m)->required()->check(CLI::Range(1, kMaxAlternatives));
  extend->add_flag("--non-imposition", xa.non_imposition);

  TheoremArgs ta;
  auto* theorems = app.add_subcommand("theorems", "Run a theorem battery");
  theorems->add_option("--which", ta.which)->required()->check(CLI::IsMember({1, 2, 3}));
  theorems->add_option("--n", ta.n)->required()->check(CLI::Range(1, 64));
  theorems->add_option("--m", ta.m)->required()->check(CLI::Range(3, kMaxAlternatives));
  theorems->add_option("--tiebreak", ta.tiebreak);
  theorems->add_option("--grid-step", ta.grid_step);
  theorems->add_option("--samples", ta.samples)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*enumerate) return run_enumerate(g, ea);
    if (*check) return run_check(g, ca);
    if (*decompose) return run_decompose(g, da);
    if (*gamma) return run_gamma(g, ga);
    if (*adpath) return run_adpath(g, pa);
    if (*extend) return run_extend(g, xa);
    if (*theorems) return run_theorems(g, ta);
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  return 2;
}
