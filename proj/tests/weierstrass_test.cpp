#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ellsurf/kodaira.hpp"

namespace ellsurf {
namespace {

using testing::qpoly;

WeierstrassSurface surface(std::vector<long> a4, std::vector<long> a6) { return minimal_model(qpoly(a4), qpoly(a6)); }

ErrorKind model_error(const QFunc& a4, const QFunc& a6) {
  try {
    minimal_model(a4, a6);
  } catch (const DomainError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "minimal_model accepted " << a4 << ", " << a6;
  return ErrorKind::ZeroInput;
}

TEST(MinimalModel, WorkedExamples) {
  EXPECT_EQ(model_error(QFunc(qpoly({0, 0, 0, 0, 1})), QFunc(qpoly({0, 0, 0, 0, 0, 0, 1}))), ErrorKind::NoSingularFibre);

  auto e3 = surface({}, {0, 0, -1});
  EXPECT_TRUE(e3.a4().is_zero());
  EXPECT_EQ(e3.a6(), qpoly({0, 0, -1}));
  EXPECT_EQ(e3.d(), 1);

  QFunc inv4(qpoly({1}), qpoly({0, 0, 0, 0, 1}));
  QFunc inv6(qpoly({1}), qpoly({0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(model_error(inv4, inv6), ErrorKind::NoSingularFibre);

  EXPECT_EQ(model_error(QFunc(qpoly({-3})), QFunc(qpoly({2}))), ErrorKind::SingularGenericFibre);
  // a4 = -3 t^2, a6 = 2 t^3 is the cuspidal family 4 a4^3 + 27 a6^2 = 0.
  EXPECT_EQ(model_error(QFunc(qpoly({0, 0, -3})), QFunc(qpoly({0, 0, 0, 2}))), ErrorKind::SingularGenericFibre);
}

TEST(MinimalModel, StripsFourthAndSixthPowers) {
  // a4 = t^4 (t+1), a6 = t^7 -> (t + 1, t)
  auto s = surface({0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, 0, 0, 1});
  EXPECT_EQ(s.a4(), qpoly({1, 1}));
  EXPECT_EQ(s.a6(), qpoly({0, 1}));
  // (t^2+1)^4 and (t^2+1)^6 * t are stripped at the degree-2 place.
  QPoly q = qpoly({1, 0, 1});
  auto r = minimal_model(q.pow(4), q.pow(6) * qpoly({0, 1}));
  EXPECT_EQ(r.a4(), qpoly({1}));
  EXPECT_EQ(r.a6(), qpoly({0, 1}));
  // Rational-function input with a pole at t = -1.
  auto w = minimal_model(QFunc(qpoly({0, 1}), qpoly({1, 1})), QFunc(qpoly({1})));
  EXPECT_EQ(w.a4(), qpoly({0, 1}) * qpoly({1, 1}).pow(3));
  EXPECT_EQ(w.a6(), qpoly({1, 1}).pow(6));
}

TEST(DiscriminantAndJ, WorkedExamples) {
  auto [d1, j1] = discriminant_and_j(surface({}, {0, 0, -1}));
  EXPECT_EQ(d1, qpoly({0, 0, 0, 0, -432}));
  EXPECT_TRUE(j1.is_zero());

  auto [d2, j2] = discriminant_and_j(surface({0, 0, -1}, {}));
  EXPECT_EQ(d2, qpoly({0, 0, 0, 0, 0, 0, 64}));
  EXPECT_EQ(j2, QFunc(qpoly({1728})));

  auto [d3, j3] = discriminant_and_j(surface({}, {0, 1}));
  EXPECT_EQ(d3, qpoly({0, 0, -432}));
  EXPECT_TRUE(j3.is_zero());
}

TEST(DiscriminantAndJ, IdentityHoldsOnCorpus) {
  for (const auto& s : testing::surface_corpus(60)) {
    QFunc lhs = s.j() * QFunc(s.delta());
    QFunc rhs((s.a4() * Rat(4)).pow(3) * Rat(-1728));
    ASSERT_EQ(lhs, rhs);
  }
}

TEST(ChartChange, WorkedExamples) {
  EXPECT_EQ(chart_change(surface({}, {0, 1})).a6, qpoly({0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(chart_change(surface({}, {0, 0, -1})).a6, qpoly({0, 0, 0, 0, -1}));
  auto s = surface({1, 0, 0, 0, 0, 1}, {});
  EXPECT_EQ(s.d(), 2);
  EXPECT_EQ(chart_change(s).a4, qpoly({0, 0, 0, 1, 0, 0, 0, 0, 1}));
  // t^5 alone is not minimal at t and strips to t, so d = 1.
  EXPECT_EQ(surface({0, 0, 0, 0, 0, 1}, {}).d(), 1);
}

TEST(ChartChange, IsAnInvolutionAndKeepsInfinityMinimal) {
  QPoly s = QPoly::t(QQ{});
  for (const auto& surf : testing::surface_corpus(60)) {
    ChartData once = chart_change(surf);
    ChartData twice = chart_change(once.a4, once.a6, surf.d());
    ASSERT_EQ(twice.a4, surf.a4());
    ASSERT_EQ(twice.a6, surf.a6());
    ASSERT_EQ(once.delta, surf.delta().reversed(12 * surf.d()));
    int v4 = poly_valuation(once.a4, s), v6 = poly_valuation(once.a6, s);
    ASSERT_FALSE((v4 == kInfiniteValuation || v4 >= 4) && (v6 == kInfiniteValuation || v6 >= 6));
  }
}

TEST(MinimalModel, IsIdempotentOnCorpus) {
  for (const auto& s : testing::surface_corpus(60)) {
    auto again = minimal_model(s.a4(), s.a6());
    ASSERT_EQ(again.a4(), s.a4());
    ASSERT_EQ(again.a6(), s.a6());
    ASSERT_EQ(again.d(), s.d());
  }
}

TEST(Kodaira, WorkedExamples) {
  Place t = Place::finite(qpoly({0, 1}));
  EXPECT_EQ(kodaira_type_at(surface({}, {0, 1}), t).symbol(), "II");
  EXPECT_EQ(kodaira_type_at(surface({}, {0, 1}), Place::infinity()).symbol(), "II*");
  EXPECT_EQ(kodaira_type_at(surface({0, 0, -1}, {}), t).symbol(), "I0*");
}

struct TableRow {
  std::vector<long> a4, a6;
  std::string symbol;
  int components, euler;
};

TEST(Kodaira, EveryTableRowAtTheOrigin) {
  std::vector<TableRow> rows = {
      {{1}, {1}, "I0", 1, 0},
      {{-3}, {2, 0, 1}, "I2", 2, 2},
      {{-3}, {2, 0, 0, 0, 0, 1}, "I5", 5, 5},
      {{}, {0, 1}, "II", 1, 2},
      {{0, 1}, {}, "III", 2, 3},
      {{}, {0, 0, 1}, "IV", 3, 4},
      {{0, 0, 1}, {}, "I0*", 5, 6},
      {{0, 0, -3}, {0, 0, 0, 2, 1}, "I1*", 6, 7},
      {{0, 0, -3}, {0, 0, 0, 2, 0, 0, 1}, "I3*", 8, 9},
      {{}, {0, 0, 0, 0, 1}, "IV*", 7, 8},
      {{0, 0, 0, 1}, {}, "III*", 8, 9},
      {{}, {0, 0, 0, 0, 0, 1}, "II*", 9, 10},
  };
  Place t = Place::finite(qpoly({0, 1}));
  for (const auto& row : rows) {
    // Adding t^7 to a6 leaves v_t(a6) < 7 untouched and forces d >= 1.
    auto s = minimal_model(qpoly(row.a4), qpoly(row.a6) + qpoly({0, 0, 0, 0, 0, 0, 0, 1}));
    auto k = kodaira_type_at(s, t);
    EXPECT_EQ(k.symbol(), row.symbol) << row.symbol;
    EXPECT_EQ(k.components, row.components) << row.symbol;
    EXPECT_EQ(k.euler, row.euler) << row.symbol;
  }
}

TEST(Kodaira, OutsideTableIsAnInvariantViolation) {
  EXPECT_THROW(classify({4, 6, 12}), InvariantViolation);
}

TEST(FibreConfiguration, WorkedExamples) {
  auto e3 = fibre_configuration(surface({}, {0, 0, -1}));
  ASSERT_EQ(e3.entries.size(), 2u);
  EXPECT_EQ(e3.entries[0].place.str(), "t");
  EXPECT_EQ(e3.entries[0].type.symbol(), "IV");
  EXPECT_TRUE(e3.entries[1].place.is_infinity());
  EXPECT_EQ(e3.entries[1].type.symbol(), "IV*");
  EXPECT_EQ(e3.euler_sum(), 12);
  EXPECT_EQ(trivial_lattice_rank(e3), 10);

  auto e1 = fibre_configuration(surface({}, {0, 1}));
  ASSERT_EQ(e1.entries.size(), 2u);
  EXPECT_EQ(e1.entries[0].type.symbol(), "II");
  EXPECT_EQ(e1.entries[1].type.symbol(), "II*");
  EXPECT_EQ(trivial_lattice_rank(e1), 10);

  auto e2 = fibre_configuration(surface({0, 0, -1}, {}));
  ASSERT_EQ(e2.entries.size(), 2u);
  EXPECT_EQ(e2.entries[0].type.symbol(), "I0*");
  EXPECT_EQ(e2.entries[1].type.symbol(), "I0*");
}

TEST(FibreConfiguration, TwelveNodalFibresGiveRankTwo) {
  FibreConfiguration cfg;
  for (int i = 0; i < 12; ++i)
    cfg.entries.push_back({Place::finite(qpoly({i, 1})), KodairaType::make(KodairaTag::In, 1), {0, 0, 1}});
  EXPECT_EQ(trivial_lattice_rank(cfg), 2);
  EXPECT_FALSE(cfg.has_reducible_fibre());
}

TEST(FibreConfiguration, NonRationalPlacesCountWithTheirDegree) {
  // a6 = t^2 + 1: two conjugate type II fibres at t = +-i, II* ... at infinity
  auto s = surface({}, {1, 0, 1});
  auto cfg = fibre_configuration(s);
  ASSERT_EQ(cfg.entries.size(), 2u);
  EXPECT_EQ(cfg.entries[0].place.degree(), 2);
  EXPECT_EQ(cfg.entries[0].type.symbol(), "II");
  EXPECT_EQ(cfg.entries[1].type.symbol(), "IV*");
  EXPECT_EQ(cfg.euler_sum(), 12);
}

// Sum over finite places of deg(q) v_q(Delta) is deg(Delta); together with
// v_s(Delta') this must be 12 d.
TEST(FibreConfiguration, EulerIdentityAndTableTotalityOnCorpus) {
  QPoly s = QPoly::t(QQ{});
  for (const auto& surf : testing::surface_corpus(80)) {
    auto cfg = fibre_configuration(surf);
    int direct = surf.delta().degree() + poly_valuation(surf.at_infinity().delta, s);
    ASSERT_EQ(direct, 12 * surf.d());
    ASSERT_EQ(cfg.euler_sum(), 12 * surf.d());
    for (const auto& e : cfg.entries) ASSERT_EQ(e.type.euler, e.valuations.delta);
  }
}

TEST(FibreConfiguration, InvariantUnderConstantRescaling) {
  for (const auto& surf : testing::surface_corpus(30)) {
    Rat u(3, 2);
    auto scaled = minimal_model(surf.a4() * pow(u, 4), surf.a6() * pow(u, 6));
    EXPECT_EQ(scaled.d(), surf.d());
    auto a = fibre_configuration(surf), b = fibre_configuration(scaled);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      EXPECT_EQ(a.entries[i].place, b.entries[i].place);
      EXPECT_EQ(a.entries[i].type, b.entries[i].type);
    }
  }
}

}  // namespace
}  // namespace ellsurf
