#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace condlab;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Solves the square system M x = r exactly; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(Matrix m, std::vector<Rational> r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      r[row] -= f * r[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = r[k] / m[k][k];
  return x;
}

// Maximum of c.x over {A x <= b, x >= 0} by trying every vertex; the region
// must be bounded for the answer to mean anything.
std::optional<Rational> vertex_enumeration_max(const Matrix& a, const std::vector<Rational>& b,
                                               const std::vector<Rational>& c) {
  const std::size_t vars = c.size();
  Matrix rows = a;
  std::vector<Rational> rhs = b;
  for (std::size_t j = 0; j < vars; ++j) {
    std::vector<Rational> row(vars, Rational(0));
    row[j] = -1;
    rows.push_back(row);
    rhs.push_back(0);
  }
  std::optional<Rational> best;
  const std::size_t total = rows.size();
  std::vector<std::size_t> pick(vars);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == vars) {
      Matrix m;
      std::vector<Rational> r;
      for (std::size_t k : pick) {
        m.push_back(rows[k]);
        r.push_back(rhs[k]);
      }
      auto x = solve_square(m, r);
      if (!x) return;
      for (std::size_t k = 0; k < total; ++k) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < vars; ++j) lhs += rows[k][j] * (*x)[j];
        if (lhs > rhs[k]) return;
      }
      Rational value = 0;
      for (std::size_t j = 0; j < vars; ++j) value += c[j] * (*x)[j];
      if (!best || value > *best) best = value;
      return;
    }
    for (std::size_t k = start; k < total; ++k) {
      pick[depth] = k;
      rec(depth + 1, k + 1);
    }
  };
  rec(0, 0);
  return best;
}

Rational r(long p, long q = 1) { return make_rational(p, q); }

}  // namespace

TEST(ExactSimplex, TextbookOptimum) {
  const Matrix a{{1, 0}, {0, 2}, {3, 2}};
  const auto sol = ExactSimplex(a, {4, 12, 18}, {3, 5}).solve();
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.value, 36);
  EXPECT_EQ(sol.x, (std::vector<Rational>{2, 6}));
}

TEST(ExactSimplex, InfeasibleAndUnbounded) {
  EXPECT_EQ(ExactSimplex({{1}}, {-1}, {1}).solve().status, LpStatus::Infeasible);
  EXPECT_EQ(ExactSimplex({{-1, 1}}, {0}, {1, 0}).solve().status, LpStatus::Unbounded);
}

TEST(ExactSimplex, NegativeRightHandSides) {
  // x + y >= 2 with x, y <= 1; minimize x + y.
  const Matrix a{{-1, -1}, {1, 0}, {0, 1}};
  const auto sol = ExactSimplex(a, {-2, 1, 1}, {-1, -1}).solve();
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.value, -2);
}

TEST(ExactSimplex, DegenerateCyclingExample) {
  // A classic program on which Dantzig's rule cycles.
  const Matrix a{{r(1, 4), -60, r(-1, 25), 9}, {r(1, 2), -90, r(-1, 50), 3}, {0, 0, 1, 0}};
  const std::vector<Rational> b{0, 0, 1};
  const std::vector<Rational> c{r(3, 4), -150, r(1, 50), -6};
  const auto sol = ExactSimplex(a, b, c).solve();
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.value, r(1, 20));
  EXPECT_EQ(vertex_enumeration_max(a, b, c), r(1, 20));
}

TEST(ExactSimplex, AgreesWithVertexEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> rhs(-3, 8);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int vars = 2 + trial % 3;
    const int rows = 2 + trial % 4;
    Matrix a;
    std::vector<Rational> b;
    for (int k = 0; k < rows; ++k) {
      std::vector<Rational> row;
      for (int j = 0; j < vars; ++j) row.push_back(coef(rng));
      a.push_back(row);
      b.push_back(rhs(rng));
    }
    // boundedness
    a.push_back(std::vector<Rational>(vars, Rational(1)));
    b.push_back(10);
    std::vector<Rational> c;
    for (int j = 0; j < vars; ++j) c.push_back(coef(rng));
    const auto sol = ExactSimplex(a, b, c).solve();
    const auto want = vertex_enumeration_max(a, b, c);
    ASSERT_NE(sol.status, LpStatus::Unbounded);
    ASSERT_EQ(sol.status == LpStatus::Optimal, want.has_value()) << "trial " << trial;
    if (want) {
      ++optimal;
      ASSERT_EQ(sol.value, *want);
      for (std::size_t k = 0; k < a.size(); ++k) {
        Rational lhs = 0;
        for (int j = 0; j < vars; ++j) {
          ASSERT_GE(sol.x[j], 0);
          lhs += a[k][j] * sol.x[j];
        }
        ASSERT_LE(lhs, b[k]);
      }
    } else {
      ++infeasible;
    }
  }
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 10);
}

TEST(FourierMotzkin, AgreesWithSimplexFeasibility) {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rhs(-4, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const int vars = 2 + trial % 3;
    const int rows = 2 + trial % 5;
    Matrix a;
    std::vector<Rational> b;
    for (int k = 0; k < rows; ++k) {
      std::vector<Rational> row;
      for (int j = 0; j < vars; ++j) row.push_back(coef(rng));
      a.push_back(row);
      b.push_back(rhs(rng));
    }
    const bool simplex = ExactSimplex(a, b, std::vector<Rational>(vars, Rational(0))).solve().status != LpStatus::Infeasible;
    Matrix with_sign = a;
    std::vector<Rational> with_sign_b = b;
    for (int j = 0; j < vars; ++j) {
      std::vector<Rational> row(vars, Rational(0));
      row[j] = -1;
      with_sign.push_back(row);
      with_sign_b.push_back(0);
    }
    ASSERT_EQ(simplex, fourier_motzkin_feasible(with_sign, with_sign_b)) << "trial " << trial;
  }
}

TEST(FourierMotzkin, SmallSystems) {
  EXPECT_TRUE(fourier_motzkin_feasible({{1}, {-1}}, {1, 0}));
  EXPECT_FALSE(fourier_motzkin_feasible({{1}, {-1}}, {-1, 0}));
  EXPECT_FALSE(fourier_motzkin_feasible({{1, 1}, {-1, 0}, {0, -1}}, {-1, 0, 0}));
}

TEST(LinearProgram, DropsTrivialAndDuplicateRows) {
  LinearProgram lp(2);
  lp.add_leq({{0, 1}, {1, 1}}, 3, "sum");
  lp.add_leq({{1, 1}, {0, 1}}, 3, "again");
  lp.add_leq({{0, 1}, {0, -1}}, 0, "trivial");
  lp.add_eq({{0, 1}}, 1, "x0=1");
  EXPECT_EQ(lp.constraints().size(), 3u);
  EXPECT_THROW(lp.add_leq({{2, 1}}, 0, "bad"), Error);
  const auto sol = lp.maximize({0, 1});
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.value, 2);
  EXPECT_FALSE(lp.first_violation(sol.x).has_value());
  EXPECT_EQ(lp.first_violation({0, 0}), std::optional<std::size_t>(2));
  EXPECT_EQ(lp.first_violation({1, -1}), std::optional<std::size_t>(3));
}

TEST(LinearProgram, InfeasibleSubsetIsIrreducible) {
  LinearProgram lp(3);
  lp.add_leq({{2, 1}}, 5, "z<=5");
  lp.add_leq({{0, 1}}, 1, "x<=1");
  lp.add_leq({{0, 1}, {2, 1}}, 9, "x+z<=9");
  lp.add_leq({{1, 1}}, 1, "y<=1");
  lp.add_geq({{0, 1}, {1, 1}}, 3, "x+y>=3");
  ASSERT_EQ(lp.find_feasible().status, LpStatus::Infeasible);
  const auto iis = lp.irreducible_infeasible_subset();
  std::vector<std::string> labels;
  for (auto k : iis) labels.push_back(lp.constraints()[k].label);
  EXPECT_EQ(labels, (std::vector<std::string>{"x<=1", "y<=1", "x+y>=3"}));
  for (std::size_t drop = 0; drop < iis.size(); ++drop) {
    LinearProgram rest(3);
    for (std::size_t k = 0; k < iis.size(); ++k) {
      if (k != drop) rest.add_leq(lp.constraints()[iis[k]].terms, lp.constraints()[iis[k]].bound, "");
    }
    EXPECT_NE(rest.find_feasible().status, LpStatus::Infeasible);
  }
}
