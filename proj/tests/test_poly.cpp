#include <gtest/gtest.h>

#include <random>

#include "wseq/poly.hpp"
#include "wseq/zn.hpp"

using namespace wseq;

namespace {

Monomial mono(std::vector<int> e) { return Monomial{std::move(e)}; }

// Random exponent vector with each entry <= cap and total equal to `degree`, or empty if
// that is impossible.
std::optional<Monomial> random_target(std::mt19937_64& gen, int vars, int cap, int degree) {
  if (static_cast<long>(vars) * cap < degree) return std::nullopt;
  std::vector<int> e(vars, 0);
  for (int left = degree; left > 0;) {
    const int v = static_cast<int>(gen() % vars);
    if (e[v] < cap) {
      ++e[v];
      --left;
    }
  }
  return Monomial{e};
}

struct Case {
  Family family;
  FamilyParams params;
};

std::vector<Case> small_cases() {
  std::vector<Case> out;
  for (int k = 2; k <= 5; ++k) {
    out.push_back({Family::F, {k, 0, 0}});
    for (int t = 1; t < k; ++t) {
      out.push_back({Family::P, {k, t, 0}});
      out.push_back({Family::Pbar, {k, t, 0}});
    }
  }
  for (int ell = 1; ell <= 5; ++ell) {
    for (int t = 2; t <= 4; ++t) {
      out.push_back({Family::Q, {0, t, ell}});
      out.push_back({Family::Qbar, {0, t, ell}});
      for (int k = ell + 1; k <= ell + 4; ++k) {
        out.push_back({Family::Htop, {k, t, ell}});
        out.push_back({Family::Hbartop, {k, t, ell}});
      }
    }
  }
  return out;
}

}  // namespace

TEST(BuildFactorSystem, QSmallFactorsExact) {
  const auto sys = build_factor_system(Family::Q, {0, 2, 3});
  ASSERT_EQ(sys.degree(), 6u);
  std::vector<std::string> got;
  for (const auto& f : sys.factors) got.push_back(factor_to_string(f));
  std::sort(got.begin(), got.end());
  std::vector<std::string> expected = {"(x1)", "(x1+x2)", "(x2+x3)", "(-x1+x2)", "(-x1+x3)", "(-x2+x3)"};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(got, expected);
}

TEST(BuildFactorSystem, PublishedDegrees) {
  EXPECT_EQ(system_degree(build_factor_system(Family::Q, {0, 6, 11})), 110u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Q, {0, 6, 12})), 126u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Qbar, {0, 7, 11})), 110u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Qbar, {0, 7, 12})), 126u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Htop, {16, 6, 12})), 125u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Htop, {15, 6, 11})), 109u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Htop, {14, 6, 11})), 107u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Htop, {13, 6, 11})), 104u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Hbartop, {17, 7, 12})), 125u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Hbartop, {16, 7, 11})), 109u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Hbartop, {15, 7, 11})), 107u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Hbartop, {14, 7, 11})), 104u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Hbartop, {13, 7, 11})), 100u);
  EXPECT_EQ(system_degree(build_factor_system(Family::Q, {0, 2, 3})), 6u);
}

TEST(BuildFactorSystem, DegreeFormulas) {
  for (int t = 2; t <= 8; ++t) {
    for (int ell = t - 1; ell <= 14; ++ell) {
      const std::size_t tri = static_cast<std::size_t>(ell) * (ell - 1) / 2;
      EXPECT_EQ(build_factor_system(Family::Q, {0, t, ell}).degree(), (t - 1) * ell + tri) << t << " " << ell;
      if (t >= 3) {
        EXPECT_EQ(build_factor_system(Family::Qbar, {0, t, ell}).degree(), (t - 2) * ell + tri) << t << " " << ell;
      }
    }
  }
}

TEST(BuildFactorSystem, HtopEqualsQWhenPrefixIsLong) {
  for (int t = 2; t <= 7; ++t) {
    for (int ell = t; ell <= 10; ++ell) {
      auto q = build_factor_system(Family::Q, {0, t, ell});
      auto h = build_factor_system(Family::Htop, {ell + t - 1, t, ell});
      EXPECT_EQ(q.factors, h.factors);
      auto qb = build_factor_system(Family::Qbar, {0, t, ell});
      auto hb = build_factor_system(Family::Hbartop, {ell + t - 1, t, ell});
      EXPECT_EQ(qb.factors, hb.factors);
    }
  }
}

TEST(BuildFactorSystem, RejectsBadParameters) {
  EXPECT_THROW(build_factor_system(Family::F, {1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(build_factor_system(Family::P, {4, 4, 0}), std::invalid_argument);
  EXPECT_THROW(build_factor_system(Family::Q, {0, 1, 3}), std::invalid_argument);
  EXPECT_THROW(build_factor_system(Family::Q, {0, 3, 0}), std::invalid_argument);
  EXPECT_THROW(build_factor_system(Family::Htop, {5, 3, 5}), std::invalid_argument);
  EXPECT_THROW(parse_family("R"), std::invalid_argument);
}

TEST(BuildFactorSystem, CanonicalOrderIsSorted) {
  const auto sys = build_factor_system(Family::Hbartop, {14, 7, 11});
  EXPECT_TRUE(std::is_sorted(sys.factors.begin(), sys.factors.end()));
}

TEST(Monomial, ParseAndPrint) {
  EXPECT_EQ(parse_monomial("5,9,10").exponents, (std::vector<int>{5, 9, 10}));
  EXPECT_EQ(to_string(mono({1, 2})), "1,2");
  EXPECT_THROW(parse_monomial("1,-2"), std::invalid_argument);
  EXPECT_THROW(parse_monomial("a"), std::invalid_argument);
}

TEST(Coefficient, SmallHandValues) {
  const auto q = build_factor_system(Family::Q, {0, 2, 3});
  EXPECT_EQ(coefficient_oracle(q, mono({2, 2, 2})), -1);
  EXPECT_EQ(coefficient(q, mono({2, 2, 2})), -1);
  EXPECT_EQ(coefficient_baseline(q, mono({2, 2, 2})), -1);
  EXPECT_EQ(coefficient_interval_dp(q, mono({2, 2, 2})), -1);
  EXPECT_EQ(coefficient(q, mono({6, 0, 0})), 0);
  EXPECT_EQ(coefficient_oracle(q, mono({6, 0, 0})), 0);
  EXPECT_EQ(coefficient(q, mono({3, 3, 3})), 0);
  EXPECT_EQ(coefficient_oracle(q, mono({3, 3, 3})), 0);

  const auto p = build_factor_system(Family::P, {3, 2, 0});
  EXPECT_EQ(coefficient(p, mono({2, 2, 1})), coefficient_oracle(p, mono({2, 2, 1})));
  EXPECT_EQ(coefficient(p, mono({2, 2, 2})), coefficient_oracle(p, mono({2, 2, 2})));
}

TEST(Coefficient, RejectsWrongLength) {
  const auto q = build_factor_system(Family::Q, {0, 2, 3});
  EXPECT_THROW(coefficient(q, mono({2, 2})), std::invalid_argument);
  EXPECT_THROW(coefficient_oracle(q, mono({2, 2})), std::invalid_argument);
}

TEST(Coefficient, MethodsAgreeWithOracle) {
  std::mt19937_64 gen(2024);
  for (const auto& c : small_cases()) {
    const auto sys = build_factor_system(c.family, c.params);
    const int d = static_cast<int>(sys.degree());
    const auto full = expand_product(sys);
    for (int rep = 0; rep < 40; ++rep) {
      const int cap = static_cast<int>(gen() % (d + 1));
      const auto target = random_target(gen, sys.num_vars, std::max(cap, 1), d);
      if (!target) continue;
      const auto it = full.find(target->exponents);
      const BigInt expected = it == full.end() ? BigInt(0) : it->second;
      ASSERT_EQ(coefficient_baseline(sys, *target), expected) << to_string(c.family) << " " << to_string(*target);
      ASSERT_EQ(coefficient(sys, *target), expected) << to_string(c.family) << " " << to_string(*target);
      if (has_interval_shape(sys)) {
        ASSERT_EQ(coefficient_interval_dp(sys, *target), expected) << to_string(c.family) << " " << to_string(*target);
      }
    }
  }
}

TEST(Coefficient, LowerDegreeTargets) {
  const auto sys = build_factor_system(Family::Q, {0, 3, 4});
  const auto full = expand_product(sys);
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = static_cast<int>(gen() % sys.degree());
    const auto target = random_target(gen, 4, 6, d);
    const auto it = full.find(target->exponents);
    const BigInt expected = it == full.end() ? BigInt(0) : it->second;
    ASSERT_EQ(coefficient(sys, *target), expected);
    ASSERT_EQ(coefficient_baseline(sys, *target), expected);
  }
  EXPECT_EQ(coefficient(sys, mono({6, 6, 6, 6})), 0);  // total exceeds the degree
}

TEST(Coefficient, IntervalShapeDetection) {
  EXPECT_TRUE(has_interval_shape(build_factor_system(Family::Q, {0, 6, 11})));
  EXPECT_TRUE(has_interval_shape(build_factor_system(Family::Hbartop, {13, 7, 11})));
  EXPECT_TRUE(has_interval_shape(build_factor_system(Family::F, {5, 0, 0})));
  FactorSystem odd = build_factor_system(Family::Q, {0, 2, 3});
  odd.factors.erase(std::find(odd.factors.begin(), odd.factors.end(), LinearFactor::difference(2, 0)));
  EXPECT_FALSE(has_interval_shape(odd));
}

TEST(Coefficient, ThreadCountIndependent) {
  const auto sys = build_factor_system(Family::Q, {0, 4, 8});
  const Monomial target = mono({3, 7, 7, 7, 7, 7, 7, 7});
  ASSERT_EQ(target.total(), static_cast<long>(sys.degree()));
  CoefficientOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const BigInt a = coefficient_interval_dp(sys, target, one);
  EXPECT_EQ(coefficient_interval_dp(sys, target, many), a);
  one.method = many.method = CoefficientMethod::baseline;
  EXPECT_EQ(coefficient_baseline(sys, target, one), a);
  EXPECT_EQ(coefficient_baseline(sys, target, many), a);
}

TEST(Coefficient, PublishedSmallestRow) {
  const auto sys = build_factor_system(Family::Htop, {13, 6, 11});
  EXPECT_EQ(coefficient(sys, mono({5, 9, 10, 10, 10, 10, 10, 10, 10, 10, 10})), BigInt("-714727771341694"));
}

TEST(Coefficient, MemoryCapIsAResourceError) {
  const auto sys = build_factor_system(Family::Q, {0, 6, 11});
  CoefficientOptions opts;
  opts.memory_cap_bytes = 1024;
  EXPECT_THROW(coefficient(sys, mono(std::vector<int>(11, 10)), opts), ResourceError);
  opts.method = CoefficientMethod::baseline;
  EXPECT_THROW(coefficient(sys, mono(std::vector<int>(11, 10)), opts), ResourceError);
  EXPECT_THROW(expand_product(sys, 1000), ResourceError);
}

TEST(EvaluateSystem, HandExamples) {
  const auto p = build_factor_system(Family::P, {3, 2, 0});
  const Modulus m(7);
  const std::vector<Residue> a{1, 2, 3}, b{1, 1, 3};
  EXPECT_EQ(evaluate_system(p, a, m), 2);
  EXPECT_EQ(evaluate_system(p, b, m), 0);
  const std::vector<Residue> short_point{1, 2};
  EXPECT_THROW(evaluate_system(p, short_point, m), std::invalid_argument);
}

TEST(EvaluateSystem, CollisionForcesZero) {
  // 1 + 2 + 4 = 7 = 0 mod 7, a window of length 3.
  const auto p = build_factor_system(Family::P, {4, 3, 0});
  const std::vector<Residue> point{1, 2, 4, 3};
  EXPECT_EQ(evaluate_system(p, point, Modulus(7)), 0);
}
