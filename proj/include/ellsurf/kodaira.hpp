#pragma once

// Kodaira fibre types from the valuations (v(a4), v(a6), v(Delta)) of a
// minimal model, residue characteristic != 2, 3.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

/// A closed point of P^1_Q: a monic irreducible q in Q[t], or infinity.
class Place {
 public:
  static Place finite(QPoly q) { return Place(std::move(q)); }
  static Place infinity() { return Place(); }

  bool is_infinity() const { return !q_.has_value(); }
  const QPoly& poly() const { return *q_; }
  /// Residue degree; 1 at infinity.
  int degree() const { return q_ ? q_->degree() : 1; }
  std::string str() const { return q_ ? q_->str() : "inf"; }

  friend bool operator==(const Place& a, const Place& b) { return a.q_ == b.q_; }
  /// Finite places by (degree, coefficients); infinity last.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
    return *a.q_ < *b.q_;
  }

 private:
  Place() = default;
  explicit Place(QPoly q) : q_(std::move(q)) {}
  std::optional<QPoly> q_;
};

enum class KodairaTag { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

struct KodairaType {
  KodairaTag tag = KodairaTag::I0;
  int n = 0;           // index for I_n and I_n*
  int components = 1;  // m_v
  int euler = 0;

  static KodairaType make(KodairaTag tag, int n = 0) {
    switch (tag) {
      case KodairaTag::I0: return {tag, 0, 1, 0};
      case KodairaTag::In: return {tag, n, n, n};
      case KodairaTag::II: return {tag, 0, 1, 2};
      case KodairaTag::III: return {tag, 0, 2, 3};
      case KodairaTag::IV: return {tag, 0, 3, 4};
      case KodairaTag::I0Star: return {tag, 0, 5, 6};
      case KodairaTag::InStar: return {tag, n, n + 5, n + 6};
      case KodairaTag::IVStar: return {tag, 0, 7, 8};
      case KodairaTag::IIIStar: return {tag, 0, 8, 9};
      case KodairaTag::IIStar: return {tag, 0, 9, 10};
    }
    return {};
  }

  bool reducible() const { return components >= 2; }

  std::string symbol() const {
    switch (tag) {
      case KodairaTag::I0: return "I0";
      case KodairaTag::In: return "I" + std::to_string(n);
      case KodairaTag::II: return "II";
      case KodairaTag::III: return "III";
      case KodairaTag::IV: return "IV";
      case KodairaTag::I0Star: return "I0*";
      case KodairaTag::InStar: return "I" + std::to_string(n) + "*";
      case KodairaTag::IVStar: return "IV*";
      case KodairaTag::IIIStar: return "III*";
      case KodairaTag::IIStar: return "II*";
    }
    return "?";
  }

  friend bool operator==(const KodairaType& a, const KodairaType& b) {
    return a.tag == b.tag && a.n == b.n && a.components == b.components && a.euler == b.euler;
  }
};

struct Valuations {
  int a4 = kInfiniteValuation;
  int a6 = kInfiniteValuation;
  int delta = 0;
};

/// The decision table. Throws InvariantViolation for a triple that no
/// minimal model can produce.
inline KodairaType classify(const Valuations& v) {
  constexpr int inf = kInfiniteValuation;
  auto ge = [](int x, int k) { return x == inf || x >= k; };
  KodairaType t;
  if (v.delta == 0) {
    t = KodairaType::make(KodairaTag::I0);
  } else if (v.a4 == 0) {
    t = KodairaType::make(KodairaTag::In, v.delta);
  } else if (ge(v.a4, 1) && v.a6 == 1) {
    t = KodairaType::make(KodairaTag::II);
  } else if (v.a4 == 1 && ge(v.a6, 2)) {
    t = KodairaType::make(KodairaTag::III);
  } else if (ge(v.a4, 2) && v.a6 == 2) {
    t = KodairaType::make(KodairaTag::IV);
  } else if (ge(v.a4, 2) && ge(v.a6, 3) && v.delta == 6) {
    t = KodairaType::make(KodairaTag::I0Star);
  } else if (v.a4 == 2 && v.a6 == 3 && v.delta > 6) {
    t = KodairaType::make(KodairaTag::InStar, v.delta - 6);
  } else if (ge(v.a4, 3) && v.a6 == 4) {
    t = KodairaType::make(KodairaTag::IVStar);
  } else if (v.a4 == 3 && ge(v.a6, 5)) {
    t = KodairaType::make(KodairaTag::IIIStar);
  } else if (ge(v.a4, 4) && v.a6 == 5) {
    t = KodairaType::make(KodairaTag::IIStar);
  } else {
    throw InvariantViolation("valuation triple outside the Kodaira table (model not minimal?)");
  }
  ensure(t.euler == v.delta, "Kodaira type Euler number differs from v(Delta)");
  return t;
}

inline Valuations valuations_at(const WeierstrassSurface& s, const Place& place) {
  if (place.is_infinity()) {
    const QPoly sp = QPoly::t(QQ{});
    const auto& c = s.at_infinity();
    return {poly_valuation(c.a4, sp), poly_valuation(c.a6, sp), poly_valuation(c.delta, sp)};
  }
  const QPoly& q = place.poly();
  return {poly_valuation(s.a4(), q), poly_valuation(s.a6(), q), poly_valuation(s.delta(), q)};
}

inline KodairaType kodaira_type_at(const WeierstrassSurface& s, const Place& place) {
  return classify(valuations_at(s, place));
}

struct FibreEntry {
  Place place;
  KodairaType type;
  Valuations valuations;
};

/// Singular fibres keyed by place, sorted (finite places first).
struct FibreConfiguration {
  std::vector<FibreEntry> entries;

  /// Sum of Euler numbers over geometric fibres; a place of degree k
  /// carries k conjugate fibres. Equals 12 d.
  int euler_sum() const {
    int sum = 0;
    for (const auto& e : entries) sum += e.place.degree() * e.type.euler;
    return sum;
  }

  bool has_reducible_fibre() const {
    for (const auto& e : entries)
      if (e.type.reducible()) return true;
    return false;
  }

  const FibreEntry* find(const Place& p) const {
    for (const auto& e : entries)
      if (e.place == p) return &e;
    return nullptr;
  }
};

inline FibreConfiguration fibre_configuration(const WeierstrassSurface& s) {
  FibreConfiguration cfg;
  for (const auto& fac : factor_over_rationals(s.delta()).factors) {
    Place place = Place::finite(fac.poly.monic());
    Valuations v = valuations_at(s, place);
    cfg.entries.push_back({place, classify(v), v});
  }
  Place inf = Place::infinity();
  Valuations vi = valuations_at(s, inf);
  if (vi.delta > 0) cfg.entries.push_back({inf, classify(vi), vi});
  std::sort(cfg.entries.begin(), cfg.entries.end(), [](const auto& a, const auto& b) { return a.place < b.place; });
  ensure(cfg.euler_sum() == 12 * s.d(), "Euler numbers of singular fibres do not sum to 12 d");
  return cfg;
}

/// Rank of the trivial lattice over Qbar: 2 + sum over geometric singular
/// fibres of (m_v - 1).
inline int trivial_lattice_rank(const FibreConfiguration& cfg) {
  int rank = 2;
  for (const auto& e : cfg.entries) rank += e.place.degree() * (e.type.components - 1);
  return rank;
}

}  // namespace ellsurf
