#ifndef CONDLAB_LP_HPP
#define CONDLAB_LP_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "condlab/rational.hpp"

namespace condlab {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Exact dense-tableau simplex for: maximize c^T x s.t. A x <= b, x >= 0.
/// Two phases (an auxiliary variable absorbs negative right-hand sides) and
/// Bland's rule throughout, so degenerate pivots cannot cycle.
class ExactSimplex {
 public:
  ExactSimplex(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
               const std::vector<Rational>& c)
      : rows_(static_cast<int>(b.size())),
        cols_(static_cast<int>(c.size())),
        nonbasic_(cols_ + 1),
        basic_(rows_),
        tab_(rows_ + 2, std::vector<Rational>(cols_ + 2, Rational(0))) {
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) tab_[i][j] = a[i].at(j);
    }
    for (int i = 0; i < rows_; ++i) {
      basic_[i] = cols_ + i;
      tab_[i][cols_] = -1;
      tab_[i][cols_ + 1] = b[i];
    }
    for (int j = 0; j < cols_; ++j) {
      nonbasic_[j] = j;
      tab_[rows_][j] = -c[j];
    }
    nonbasic_[cols_] = -1;
    tab_[rows_ + 1][cols_] = 1;
  }

  LpSolution solve() {
    LpSolution sol;
    int r = 0;
    for (int i = 1; i < rows_; ++i) {
      if (tab_[i][cols_ + 1] < tab_[r][cols_ + 1]) r = i;
    }
    if (rows_ > 0 && tab_[r][cols_ + 1] < 0) {
      pivot(r, cols_);
      if (!run(2) || tab_[rows_ + 1][cols_ + 1] < 0) {
        sol.status = LpStatus::Infeasible;
        return sol;
      }
      for (int i = 0; i < rows_; ++i) {
        if (basic_[i] != -1) continue;
        for (int j = 0; j <= cols_; ++j) {
          if (nonbasic_[j] != -1 && tab_[i][j] != 0) {
            pivot(i, j);
            break;
          }
        }
      }
    }
    const bool bounded = run(1);
    sol.x.assign(cols_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
      if (basic_[i] >= 0 && basic_[i] < cols_) sol.x[basic_[i]] = tab_[i][cols_ + 1];
    }
    sol.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
    sol.value = tab_[rows_][cols_ + 1];
    return sol;
  }

 private:
  void pivot(int r, int s) {
    const Rational inv = 1 / tab_[r][s];
    for (int i = 0; i < rows_ + 2; ++i) {
      if (i == r || tab_[i][s] == 0) continue;
      const Rational factor = tab_[i][s] * inv;
      for (int j = 0; j < cols_ + 2; ++j) tab_[i][j] -= tab_[r][j] * factor;
      tab_[i][s] = tab_[r][s] * factor;
    }
    for (int j = 0; j < cols_ + 2; ++j) {
      if (j != s) tab_[r][j] *= inv;
    }
    for (int i = 0; i < rows_ + 2; ++i) {
      if (i != r) tab_[i][s] *= -inv;
    }
    tab_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  /// phase 2 optimizes the auxiliary row, phase 1 the real objective.
  bool run(int phase) {
    const int obj = rows_ + phase - 1;
    while (true) {
      int s = -1;
      for (int j = 0; j <= cols_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (tab_[obj][j] < 0 && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      Rational best;
      for (int i = 0; i < rows_; ++i) {
        if (tab_[i][s] <= 0) continue;
        Rational ratio = tab_[i][cols_ + 1] / tab_[i][s];
        if (r == -1 || ratio < best || (ratio == best && basic_[i] < basic_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int rows_;
  int cols_;
  std::vector<int> nonbasic_;
  std::vector<int> basic_;
  std::vector<std::vector<Rational>> tab_;
};

/// sum_k coeff_k * x_{var_k} <= bound, tagged with where it came from.
struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;
  Rational bound;
  std::string label;
};

/// Builder over nonnegative variables. Duplicate rows are dropped on insertion.
class LinearProgram {
 public:
  explicit LinearProgram(int variables) : vars_(variables) {}

  int variables() const { return vars_; }
  const std::vector<LinearConstraint>& constraints() const { return rows_; }

  void add_leq(std::vector<std::pair<int, Rational>> terms, Rational bound, std::string label) {
    std::map<int, Rational> merged;
    for (auto& [var, coeff] : terms) {
      if (var < 0 || var >= vars_) throw Error(ErrorCode::InvalidArgument, "LP variable out of range");
      merged[var] += coeff;
    }
    LinearConstraint row;
    for (auto& [var, coeff] : merged) {
      if (coeff != 0) row.terms.emplace_back(var, coeff);
    }
    row.bound = std::move(bound);
    row.label = std::move(label);
    if (row.terms.empty() && row.bound >= 0) return;
    auto key = std::make_pair(row.terms, row.bound);
    if (!seen_.emplace(std::move(key), rows_.size()).second) return;
    rows_.push_back(std::move(row));
  }

  void add_geq(std::vector<std::pair<int, Rational>> terms, const Rational& bound, std::string label) {
    for (auto& t : terms) t.second = -t.second;
    add_leq(std::move(terms), -bound, std::move(label));
  }

  void add_eq(const std::vector<std::pair<int, Rational>>& terms, const Rational& bound, const std::string& label) {
    add_leq(terms, bound, label);
    add_geq(terms, bound, label);
  }

  LpSolution maximize(const std::vector<Rational>& objective) const {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    a.reserve(rows_.size());
    for (const auto& row : rows_) {
      std::vector<Rational> dense(vars_, Rational(0));
      for (const auto& [var, coeff] : row.terms) dense[var] = coeff;
      a.push_back(std::move(dense));
      b.push_back(row.bound);
    }
    return ExactSimplex(a, b, objective).solve();
  }

  LpSolution find_feasible() const { return maximize(std::vector<Rational>(vars_, Rational(0))); }

  /// Exact check of an assignment against every row; returns the first violated row.
  std::optional<std::size_t> first_violation(const std::vector<Rational>& x) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Rational lhs = 0;
      for (const auto& [var, coeff] : rows_[k].terms) lhs += coeff * x.at(var);
      if (lhs > rows_[k].bound) return k;
    }
    for (const auto& v : x) {
      if (v < 0) return rows_.size();
    }
    return std::nullopt;
  }

  /// Deletion filter: an irreducible infeasible subset of the rows (plus x >= 0).
  /// Only meaningful when the program is infeasible.
  std::vector<std::size_t> irreducible_infeasible_subset() const {
    std::vector<std::size_t> keep(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) keep[k] = k;
    for (std::size_t pos = 0; pos < keep.size();) {
      std::vector<std::size_t> trial = keep;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
      if (subset(trial).find_feasible().status == LpStatus::Infeasible) {
        keep = std::move(trial);
      } else {
        ++pos;
      }
    }
    return keep;
  }

 private:
  LinearProgram subset(const std::vector<std::size_t>& rows) const {
    LinearProgram out(vars_);
    for (std::size_t k : rows) out.rows_.push_back(rows_[k]);
    return out;
  }

  int vars_;
  std::vector<LinearConstraint> rows_;
  std::map<std::pair<std::vector<std::pair<int, Rational>>, Rational>, std::size_t> seen_;
};

/// Fourier-Motzkin feasibility of A x <= b over free real x. Exponential; meant
/// for tiny systems and as an independent cross-check of the simplex.
inline bool fourier_motzkin_feasible(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t vars = a.empty() ? 0 : a.front().size();
  for (std::size_t var = 0; var < vars; ++var) {
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k][var] > 0) {
        pos.push_back(k);
      } else if (a[k][var] < 0) {
        neg.push_back(k);
      } else {
        zero.push_back(k);
      }
    }
    std::vector<std::vector<Rational>> next_a;
    std::vector<Rational> next_b;
    std::map<std::pair<std::vector<Rational>, Rational>, bool> seen;
    auto push = [&](std::vector<Rational> row, Rational bound) {
      // Scale so the largest |coefficient| is 1; keeps duplicate detection effective.
      Rational scale = 0;
      for (const auto& c : row) scale = std::max(scale, Rational(abs(c)));
      if (scale != 0) {
        for (auto& c : row) c /= scale;
        bound /= scale;
      }
      if (seen.emplace(std::make_pair(row, bound), true).second) {
        next_a.push_back(std::move(row));
        next_b.push_back(std::move(bound));
      }
    };
    for (std::size_t k : zero) push(a[k], b[k]);
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        const Rational wp = -a[q][var];
        const Rational wq = a[p][var];
        std::vector<Rational> row(vars);
        for (std::size_t j = 0; j < vars; ++j) row[j] = wp * a[p][j] + wq * a[q][j];
        row[var] = 0;
        push(std::move(row), wp * b[p] + wq * b[q]);
      }
    }
    a = std::move(next_a);
    b = std::move(next_b);
  }
  for (const auto& bound : b) {
    if (bound < 0) return false;
  }
  return true;
}

}  // namespace condlab

#endif  // CONDLAB_LP_HPP
