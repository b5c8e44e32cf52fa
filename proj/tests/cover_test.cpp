#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ellsurf/cover.hpp"

namespace ellsurf {
namespace {

using testing::fppoly;
using testing::qpoly;

WeierstrassSurface surface(std::vector<long> a4, std::vector<long> a6) { return minimal_model(qpoly(a4), qpoly(a6)); }

FpFunc fx(std::uint64_t p, std::vector<long> num, std::vector<long> den = {1}) {
  return FpFunc(fppoly(p, num), fppoly(p, den));
}

template <class Fn>
ErrorKind domain_error(Fn&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no DomainError";
  return ErrorKind::ZeroInput;
}

TEST(LiftX, WorkedExamples) {
  auto a = lift_x(fx(5, {}), 5);
  EXPECT_TRUE(a.f0.is_zero());
  EXPECT_EQ(a.f1, qpoly({1}));

  auto b = lift_x(fx(5, {4, 3}), 5);
  EXPECT_EQ(b.f0, qpoly({-1, -2}));

  auto c = lift_x(fx(5, {0, 1}, {1, 1}), 5);
  EXPECT_EQ(c.f(), QFunc(qpoly({0, 1}), qpoly({1, 1})));
  EXPECT_EQ(c.lambda, 0);
}

TEST(LambdaScan, WorkedExamples) {
  auto e3 = surface({}, {0, 0, -1});
  Lift zero = lift_x(fx(5, {}), 5);
  EXPECT_EQ(lift_cubic(e3, zero), qpoly({0, 0, -1}));
  auto l = lambda_scan(e3, zero, 100);
  EXPECT_EQ(l.lambda, 1);
  EXPECT_EQ(lift_cubic(e3, l), qpoly({125, 0, -1}));

  auto tt = surface({0, 0, -1}, {});
  Lift t{qpoly({0, 1}), qpoly({1}), 5, 0};
  EXPECT_TRUE(lift_cubic(tt, t).is_zero());
  auto l2 = lambda_scan(tt, t, 100);
  EXPECT_EQ(l2.lambda, 1);
  EXPECT_EQ(lift_cubic(tt, l2), qpoly({5, 1}) * qpoly({5, 2}) * Rat(5));

  EXPECT_EQ(domain_error([&] { lambda_scan(e3, zero, 0); }), ErrorKind::ScanExhausted);
}

TEST(BuildCover, WorkedExampleE3) {
  auto e3 = surface({}, {0, 0, -1});
  auto [c, r] = build_cover(e3, 5, SectionModP{fx(5, {}), fx(5, {0, 2})}, 100, false);
  EXPECT_EQ(c.lift.lambda, 1);
  EXPECT_EQ(c.G, QFunc(qpoly({125, 0, -1})));
  EXPECT_EQ(c.J, qpoly({125, 0, -1}));
  EXPECT_EQ(c.kernel.c, Rat(-1));
  EXPECT_EQ(c.kernel.S, qpoly({-125, 0, 1}));
  EXPECT_EQ(c.kernel.v, QFunc(qpoly({1})));
  EXPECT_EQ(c.genus, 0);
  EXPECT_TRUE(c.warnings.empty());
  EXPECT_TRUE(r.split);
  EXPECT_EQ(r.g_bar, fx(5, {0, 2}));
  ASSERT_EQ(r.intersection.size(), 2u);
  EXPECT_EQ(r.intersection[0].place_str(), "t");
  EXPECT_EQ(r.intersection[0].order, 1);
  EXPECT_TRUE(r.intersection[1].at_infinity());
  EXPECT_EQ(r.intersection[1].order, -1);
  EXPECT_TRUE(r.involution_swap);
}

TEST(BuildCover, Errors) {
  EXPECT_EQ(domain_error([] { build_cover(surface({}, {0, 1}), 5, SectionModP{fx(5, {0, 1}), fx(5, {0, 1})}); }),
            ErrorKind::NotASection);
  EXPECT_EQ(domain_error([] { build_cover(surface({}, {0, 1}), 5, fx(5, {0, 1})); }), ErrorKind::NotASection);
  EXPECT_EQ(domain_error([] { build_cover(surface({0, 0, -1}, {}), 5, SectionModP{fx(5, {0, 1}), fx(5, {})}); }),
            ErrorKind::TwoTorsionDegenerate);
  EXPECT_EQ(domain_error([] { build_cover(surface({0, 0, -1}, {}), 5, fx(5, {0, 1})); }),
            ErrorKind::TwoTorsionDegenerate);
  auto e3 = surface({}, {0, 0, -1});
  EXPECT_EQ(domain_error([&] { build_cover(e3, 3, fx(3, {})); }), ErrorKind::BadPrimeRefused);
  EXPECT_EQ(domain_error([&] { build_cover(e3, 5, fx(5, {}), 0); }), ErrorKind::ScanExhausted);
}

TEST(BuildCover, ForcedBadPrimeCarriesAWarning) {
  // a6 = t^2 - 5 is bad at 5 (disc 20) but x = 0 is a section there.
  auto s = surface({}, {-5, 0, 1});
  EXPECT_EQ(domain_error([&] { build_cover(s, 5, fx(5, {})); }), ErrorKind::BadPrimeRefused);
  auto [c, r] = build_cover(s, 5, fx(5, {}), 100, true);
  ASSERT_EQ(c.warnings.size(), 1u);
  EXPECT_NE(c.warnings[0].find("bad prime 5"), std::string::npos);
  EXPECT_EQ(c.lift.lambda, 0);
  EXPECT_TRUE(r.split);
  EXPECT_EQ(r.g_bar, fx(5, {0, 1}));
}

TEST(BuildCover, ForcedPastTheGateE3AtThreeHasNoSection) {
  // Delta = -432 t^4 vanishes mod 3: the reduction is cuspidal and x = 0
  // gives y^2 = -t^2, not a square mod 3. Forcing passes the prime gate
  // and fails on the section itself.
  auto e3 = surface({}, {0, 0, -1});
  EXPECT_EQ(domain_error([&] { build_cover(e3, 3, fx(3, {}), 100, true); }), ErrorKind::NotASection);
  for (const auto& sec : search_sections(e3, 3, {6, 2})) EXPECT_TRUE(sec.y.is_zero());
}

TEST(TorsionWitness, WorkedExamples) {
  auto e3 = surface({}, {0, 0, -1});
  auto [c, r] = build_cover(e3, 5, fx(5, {}));
  auto w = torsion_witness(c, r, fibre_configuration(e3));
  EXPECT_EQ(w.p, 5u);
  EXPECT_EQ(w.multiplier, 2);
  EXPECT_EQ(w.rationale.size(), 3u);
  EXPECT_TRUE(w.caveat_n);

  FibreConfiguration nodal;
  for (int i = 0; i < 12; ++i)
    nodal.entries.push_back({Place::finite(qpoly({i, 1})), KodairaType::make(KodairaTag::In, 1), {0, 0, 1}});
  EXPECT_FALSE(torsion_witness(c, r, nodal).caveat_n);

  CoverData broken = c;
  broken.genus = 5;
  EXPECT_EQ(domain_error([&] { torsion_witness(broken, r, nodal); }), ErrorKind::InvalidCover);
  CoverData broken2 = c;
  broken2.J = broken2.J * Rat(2);
  EXPECT_EQ(domain_error([&] { torsion_witness(broken2, r, nodal); }), ErrorKind::InvalidCover);
  SpecialFibreReport unsplit = r;
  unsplit.split = false;
  EXPECT_EQ(domain_error([&] { torsion_witness(c, unsplit, nodal); }), ErrorKind::InvalidCover);
}

TEST(DivisorOf, ZerosPolesAndInfinity) {
  auto d = divisor_of(fx(7, {1, 0, 1}, {0, 0, 0, 1}));  // (t^2 + 1) / t^3; t^2 + 1 irreducible mod 7
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].place_str(), "t");
  EXPECT_EQ(d[0].order, -3);
  EXPECT_EQ(d[1].place_str(), "t^2 + 1");
  EXPECT_EQ(d[1].order, 1);
  EXPECT_TRUE(d[2].at_infinity());
  EXPECT_EQ(d[2].order, 1);
  int total = 0;
  for (const auto& pt : d) total += pt.order * (pt.place ? pt.place->degree() : 1);
  EXPECT_EQ(total, 0);
}

// f1^3 P((f0 + p lambda) / f1) = J as polynomials, for random lifts.
TEST(CoverProperties, JIdentity) {
  std::mt19937_64 rng(5);
  for (const auto& s : testing::surface_corpus(20, 11)) {
    for (int trial = 0; trial < 5; ++trial) {
      QPoly f0 = testing::random_qpoly(rng, 3, 6), f1 = testing::random_qpoly(rng, 2, 6);
      if (f1.is_zero()) continue;
      Lift l{f0, f1, 7, trial};
      QFunc lhs = QFunc(f1.pow(3)) * s.weierstrass_cubic(l.f());
      ASSERT_EQ(lhs, QFunc(lift_cubic(s, l)));
    }
  }
}

// gcd(fbar0, fbar1) = 1 implies gcd(J_lambda, f1) = 1.
TEST(CoverProperties, CoprimalityPropagates) {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (const auto& s : testing::surface_corpus(20, 12)) {
    for (std::uint64_t p : {5, 7, 11}) {
      if (gauss_valuation(s.a4(), p) < 0 || gauss_valuation(s.a6(), p) < 0) continue;
      FpPoly n = testing::random_fppoly(rng, p, 3), d = testing::random_fppoly(rng, p, 2).monic();
      if (n.is_zero() || gcd(n, d).degree() > 0) continue;
      Lift l = lift_x(FpFunc(n, d), p);
      for (int lam = 0; lam < 4; ++lam) {
        l.lambda = lam;
        QPoly J = lift_cubic(s, l);
        if (J.is_zero()) continue;
        ASSERT_EQ(gcd(J, l.f1).degree(), 0);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50);
}

// Every accepted cover on corpus sections: reduction compatibility,
// nonsquare certificate, genus formula, involution.
TEST(CoverProperties, AcceptedCoversOnCorpus) {
  int covers = 0;
  for (const auto& s : testing::surface_corpus(25, 13)) {
    auto cfg = fibre_configuration(s);
    for (std::uint64_t p : {5, 7}) {
      if (!check_star(s, p).pass) continue;
      for (const auto& sec : search_sections(s, p, {2 * s.d(), 0})) {
        if (sec.y.is_zero()) continue;
        auto [c, r] = build_cover(s, p, sec);
        ASSERT_TRUE(cover_failures(c).empty());
        ASSERT_EQ(reduce_mod_p(c.G, p), sec.y * sec.y);
        ASSERT_GE(c.kernel.S.degree(), 1);
        ASSERT_EQ(c.genus, (c.kernel.S.degree() - 1) / 2);
        ASSERT_TRUE(r.split);
        ASSERT_EQ(r.g_bar * r.g_bar, sec.y * sec.y);
        // The negated section gives the other branch and the same divisor.
        auto [cn, rn] = build_cover(s, p, sec.negated());
        ASSERT_EQ(cn.G, c.G);
        ASSERT_EQ(rn.g_bar, r.g_bar);
        ASSERT_EQ(rn.intersection.size(), r.intersection.size());
        ASSERT_TRUE(r.involution_swap);
        torsion_witness(c, r, cfg);
        ++covers;
      }
    }
  }
  EXPECT_GT(covers, 0);
}

}  // namespace
}  // namespace ellsurf
