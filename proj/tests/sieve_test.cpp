#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ellsurf/sieve.hpp"

namespace ellsurf {
namespace {

using testing::qpoly;

WeierstrassSurface surface(std::vector<long> a4, std::vector<long> a6) { return minimal_model(qpoly(a4), qpoly(a6)); }

std::vector<Integer> ints(std::vector<long> v) { return {v.begin(), v.end()}; }

std::vector<std::uint64_t> primes_below(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

TEST(FactorizationType, WorkedExamples) {
  auto [q1, f1, ok1] = factorization_type(QFunc(qpoly({0, 5, 0, 0, 1})), 5);
  EXPECT_FALSE(ok1);
  EXPECT_EQ(q1.parts, (std::vector<std::pair<int, int>>{{1, 1}, {3, 1}}));
  EXPECT_EQ(f1.parts, (std::vector<std::pair<int, int>>{{1, 4}}));

  auto [q2, f2, ok2] = factorization_type(QFunc(qpoly({0, 0, -432})), 7);
  EXPECT_TRUE(ok2);
  EXPECT_EQ(q2.unit_valuation, 0);
  EXPECT_EQ(f2.parts, (std::vector<std::pair<int, int>>{{1, 2}}));

  auto [q3, f3, ok3] = factorization_type(QFunc(qpoly({0, 0, -432})), 3);
  EXPECT_FALSE(ok3);
  EXPECT_EQ(q3.unit_valuation, 3);
  EXPECT_TRUE(f3.parts.empty());
}

TEST(FactorizationType, ZeroAndPolesAndIntegrality) {
  auto [q, f, ok] = factorization_type(QFunc(QQ{}), 5);
  EXPECT_TRUE(ok);
  EXPECT_TRUE(q.parts.empty());

  // t / (t - 5): the two factors collide mod 5.
  auto [q2, f2, ok2] = factorization_type(QFunc(qpoly({0, 1}), qpoly({-5, 1})), 5);
  EXPECT_FALSE(ok2);
  EXPECT_EQ(q2.parts, (std::vector<std::pair<int, int>>{{1, -1}, {1, 1}}));
  auto [q3, f3, ok3] = factorization_type(QFunc(qpoly({0, 1}), qpoly({-5, 1})), 7);
  EXPECT_TRUE(ok3);
  EXPECT_EQ(f3.parts, q3.parts);

  try {
    factorization_type(QFunc(qpoly({1, 1})) * Rat(1, 7), 7);
    FAIL() << "expected NonIntegral";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonIntegral);
  }
  // 5 t^2 + 1: leading coefficient dies, degree drops.
  EXPECT_FALSE(std::get<2>(factorization_type(QFunc(qpoly({1, 0, 5})), 5)));
}

TEST(FactorizationType, PreservedKeepsDegreeAndSquarefreeDegree) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    QPoly a = testing::random_qpoly(rng, 5, 9);
    QPoly b = testing::random_qpoly(rng, 2, 9);
    QPoly f = a * b * b;
    if (f.degree() < 1) continue;
    for (std::uint64_t p : {5, 7, 11}) {
      if (gauss_valuation(f, p) < 0) continue;
      auto [q, fp, ok] = factorization_type(QFunc(f), p);
      if (!ok) continue;
      FpPoly r = reduce_mod_p(f, p);
      ASSERT_EQ(r.degree(), f.degree());
      int sq_q = 0, sq_p = 0;
      for (const auto& part : squarefree_decomposition(f)) sq_q += part.poly.degree();
      for (const auto& part : squarefree_decomposition(r)) sq_p += part.poly.degree();
      ASSERT_EQ(sq_p, sq_q) << f << " mod " << p;
    }
  }
}

TEST(CheckStar, WorkedExamples) {
  auto e3 = surface({}, {0, 0, -1});
  auto r5 = check_star(e3, 5);
  EXPECT_TRUE(r5.pass);
  EXPECT_TRUE(r5.specialization_ok);
  EXPECT_EQ(r5.diagnostics.size(), 8u);

  auto r3 = check_star(e3, 3);
  EXPECT_FALSE(r3.pass);
  EXPECT_FALSE(r3.residue_char_ok);
  bool delta_unit = false;
  for (const auto& d : r3.diagnostics)
    if (d.name == "delta" && !d.preserved && d.reason.find("unit") != std::string::npos) delta_unit = true;
  EXPECT_TRUE(delta_unit);

  auto r2 = check_star(e3, 2);
  EXPECT_FALSE(r2.pass);
  EXPECT_FALSE(r2.residue_char_ok);

  EXPECT_THROW(check_star(e3, 9), InputError);
}

TEST(BadPrimes, WorkedExamples) {
  EXPECT_EQ(bad_primes(surface({}, {0, 1})).primes(), ints({2, 3}));
  EXPECT_EQ(bad_primes(surface({}, {0, 0, -1})).primes(), ints({2, 3}));
  auto b = bad_primes(surface({}, {-5, 0, 1}));
  EXPECT_EQ(b.primes(), ints({2, 3, 5}));
  bool disc_cert = false;
  for (const auto& c : b.reasons.at(5))
    if (c.kind == CertificateKind::FactorDiscriminant && c.function == "a6") disc_cert = true;
  EXPECT_TRUE(disc_cert);
  EXPECT_TRUE(b.unfactored.empty());
}

TEST(BadPrimes, ConvictsEveryPrimeThatFailsOnExamples) {
  // Every odd prime p >= 5 in the set for these surfaces genuinely fails.
  for (auto s : {surface({}, {-5, 0, 1}), surface({0, 7}, {1, 0, 0, 1})}) {
    auto bad = bad_primes(s);
    auto fs = factor_surface(s);
    for (const auto& p : bad.primes()) {
      if (p < 5 || p > 1000) continue;
      EXPECT_FALSE(check_star(fs, p.get_ui(), false).pass) << p;
    }
  }
}

// The sieve may over-approximate but never miss a failing prime; check_star
// decides each prime directly from the reductions.
TEST(BadPrimes, SoundAgainstDirectCheckOnCorpus) {
  auto primes = primes_below(200);
  for (const auto& s : testing::surface_corpus(50)) {
    auto fs = factor_surface(s);
    auto bad = bad_primes(fs);
    ASSERT_TRUE(bad.contains(2) && bad.contains(3));
    for (auto p : primes) {
      if (bad.contains(Integer(static_cast<unsigned long>(p)))) continue;
      ASSERT_TRUE(check_star(fs, p, false).pass) << "a4 = " << s.a4() << ", a6 = " << s.a6() << ", p = " << p;
    }
  }
}

TEST(CheckStar, InvariantUnderUnitRescaling) {
  Rat u(5, 7);
  auto primes = primes_below(60);
  for (const auto& s : testing::surface_corpus(20)) {
    auto scaled = minimal_model(s.a4() * pow(u, 4), s.a6() * pow(u, 6));
    auto fa = factor_surface(s), fb = factor_surface(scaled);
    for (auto p : primes) {
      if (p == 5 || p == 7) continue;
      ASSERT_EQ(check_star(fa, p, false).pass, check_star(fb, p, false).pass) << p;
    }
  }
}

}  // namespace
}  // namespace ellsurf
