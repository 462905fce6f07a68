#ifndef CONDLAB_SERIALIZE_HPP
#define CONDLAB_SERIALIZE_HPP

#include <string>
#include <type_traits>

#include "condlab/adpath.hpp"
#include "condlab/analysis.hpp"

namespace condlab {

namespace detail {

inline std::string alt_json(Alternative x) { return std::string(1, letter(x)); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

inline nlohmann::json witness_to_json(const Witness& w) {
  using detail::alt_json;
  return std::visit(
      detail::overloaded{
          [](const ManipulationWitness& m) {
            nlohmann::json j{{"kind", "manipulation"},
                             {"truthful", to_string(m.truthful)},
                             {"deviation", to_string(m.deviation)}};
            j["coalition"] = nlohmann::json::array();
            for (auto v : m.coalition) j["coalition"].push_back(v.index + 1);
            j["cuts"] = nlohmann::json::array();
            for (auto x : m.cuts) j["cuts"].push_back(alt_json(x));
            return j;
          },
          [](const ImpositionWitness& m) {
            return nlohmann::json{{"kind", "imposition"}, {"uncovered", alt_json(m.uncovered)}};
          },
          [](const EfficiencyWitness& e) {
            return nlohmann::json{{"kind", "efficiency"},
                                  {"profile", to_string(e.profile)},
                                  {"dominated", alt_json(e.dominated)},
                                  {"dominator", alt_json(e.dominator)},
                                  {"probability", to_string(e.probability)}};
          },
          [](const SwapWitness& s) {
            return nlohmann::json{{"kind", "swap"},
                                  {"profile", to_string(s.profile)},
                                  {"swapped", to_string(s.swapped)},
                                  {"voter", s.voter.index + 1},
                                  {"upper", alt_json(s.upper)},
                                  {"lower", alt_json(s.lower)},
                                  {"affected", alt_json(s.affected)},
                                  {"before", to_string(s.before)},
                                  {"after", to_string(s.after)}};
          },
          [](const MixtureWitness& m) {
            return nlohmann::json{{"kind", "mixture"},
                                  {"profile", to_string(m.profile)},
                                  {"alternative", alt_json(m.alternative)},
                                  {"lhs", to_string(m.lhs)},
                                  {"rhs", to_string(m.rhs)}};
          },
          [](const PathWitness& p) {
            return nlohmann::json{{"kind", "path"}, {"index", p.index}, {"reason", p.reason}};
          }},
      w);
}

inline Witness witness_from_json(const nlohmann::json& j, int m) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    auto alt = [&](const char* key) { return parse_alternative(j.at(key).get<std::string>(), m); };
    auto prof = [&](const char* key) { return parse_profile(j.at(key).get<std::string>()); };
    auto rat = [&](const char* key) { return parse_rational(j.at(key).get<std::string>()); };
    if (kind == "manipulation") {
      ManipulationWitness w{prof("truthful"), prof("deviation"), {}, {}};
      for (const auto& v : j.at("coalition")) w.coalition.push_back(Voter{v.get<int>() - 1});
      for (const auto& x : j.at("cuts")) w.cuts.push_back(parse_alternative(x.get<std::string>(), m));
      return w;
    }
    if (kind == "imposition") return ImpositionWitness{alt("uncovered")};
    if (kind == "efficiency") return EfficiencyWitness{prof("profile"), alt("dominated"), alt("dominator"), rat("probability")};
    if (kind == "swap") {
      return SwapWitness{prof("profile"), prof("swapped"), Voter{j.at("voter").get<int>() - 1}, alt("upper"),
                         alt("lower"), alt("affected"), rat("before"), rat("after")};
    }
    if (kind == "mixture") return MixtureWitness{prof("profile"), alt("alternative"), rat("lhs"), rat("rhs")};
    if (kind == "path") return PathWitness{j.at("index").get<std::size_t>(), j.at("reason").get<std::string>()};
    throw Error(ErrorCode::Parse, "unknown witness kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed witness JSON: ") + e.what());
  }
}

inline nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j{{"axiom", v.axiom}, {"holds", v.holds}};
  j["witness"] = v.witness ? witness_to_json(*v.witness) : nlohmann::json(nullptr);
  j["profiles_checked"] = v.profiles_checked;
  j["comparisons"] = v.comparisons;
  if (v.coalition_bound) j["coalition_bound"] = *v.coalition_bound;
  return j;
}

/// Re-checks a witness against the SDS. `axiom` disambiguates swap witnesses
/// (localizedness vs non-perversity).
inline bool replay_witness(const Sds& sds, const DomainSpec& dom, const std::string& axiom, const Witness& w,
                           const Limits& limits = {}) {
  return std::visit(detail::overloaded{
                        [&](const ManipulationWitness& m) {
                          return contains(dom, m.truthful) && contains(dom, m.deviation) && reproduces(sds, m);
                        },
                        [&](const ImpositionWitness& m) { return reproduces(sds, m, dom, limits); },
                        [&](const EfficiencyWitness& e) { return contains(dom, e.profile) && reproduces(sds, e); },
                        [&](const SwapWitness& s) {
                          return contains(dom, s.profile) && contains(dom, s.swapped) &&
                                 reproduces(sds, s, axiom == "localizedness");
                        },
                        [&](const MixtureWitness& m) {
                          return contains(dom, m.profile) && evaluate(sds, m.profile)[m.alternative] == m.lhs &&
                                 m.lhs != m.rhs;
                        },
                        [](const PathWitness&) { return false; }},
                    w);
}

inline std::string verdict_to_text(const Verdict& v) {
  std::string out = v.axiom + ": " + (v.holds ? "holds" : "VIOLATED") + " (" + std::to_string(v.profiles_checked) +
                    " profiles, " + std::to_string(v.comparisons) + " comparisons)\n";
  if (v.coalition_bound) out += "  bounded: coalitions of at most " + std::to_string(*v.coalition_bound) + " voters\n";
  if (v.witness) {
    const auto j = witness_to_json(*v.witness);
    for (const auto& [key, value] : j.items()) {
      std::string text = value.is_string() ? value.get<std::string>() : value.dump();
      std::string indented;
      for (char ch : text) {
        indented += ch;
        if (ch == '\n') indented += "      ";
      }
      while (!indented.empty() && (indented.back() == ' ' || indented.back() == '\n')) indented.pop_back();
      out += "  " + key + ": " + indented + "\n";
    }
  }
  return out;
}

}  // namespace condlab

#endif  // CONDLAB_SERIALIZE_HPP
