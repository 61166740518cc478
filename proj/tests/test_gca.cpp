#include <gtest/gtest.h>

#include <random>

#include "lefdisc/lefdisc.hpp"
#include "oracles.hpp"

using namespace lefdisc;

namespace {

MultiPoly P(const std::string& text, std::size_t nv) { return MultiPoly::parse(text, nv); }

bool has_kind(const std::vector<Violation>& v, ViolationKind kind) {
  for (const auto& x : v)
    if (x.kind == kind) return true;
  return false;
}

RingDocument f1_document() { return f1().ring.to_document(); }

Element random_element(std::mt19937& rng, const CohomologyRing& ring, int degree) {
  std::uniform_int_distribution<int> c(-3, 3);
  Element e = ring.zero(degree);
  for (auto& x : e.coeffs) x = Rational(c(rng));
  return e;
}

}  // namespace

TEST(LoadRing, ShippedF1Document) {
  CohomologyRing ring = load_ring(emit_ring(f1().ring));
  EXPECT_EQ(ring.betti_numbers(), (std::vector<std::size_t>{1, 0, 2, 0, 1}));
  EXPECT_TRUE(validate(ring).empty());
}

TEST(LoadRing, TamperedCoefficientBreaksAssociativity) {
  RingDocument doc = f1_document();
  bool altered = false;
  for (auto& p : doc.products)
    if (p.a == BasisRef{0, 0} && p.b == BasisRef{2, 0}) {
      p.result = {Rational(2), Rational(0)};
      altered = true;
    }
  ASSERT_TRUE(altered);
  try {
    build_ring(doc);
    FAIL() << "expected a validation error";
  } catch (const RingValidationError& e) {
    ASSERT_TRUE(has_kind(e.violations(), ViolationKind::Associativity));
    bool named = false;
    for (const auto& v : e.violations())
      if (v.kind == ViolationKind::Associativity && v.message.find("(1 * H) * H") != std::string::npos) named = true;
    EXPECT_TRUE(named);
  }
}

TEST(LoadRing, SingularPairingIsDualityViolation) {
  RingDocument doc = f1_document();
  std::erase_if(doc.products, [](const ProductEntry& p) { return p.a.degree == 2 && p.b.degree == 2; });
  auto v = validate(CohomologyRing::from_document(doc));
  EXPECT_TRUE(has_kind(v, ViolationKind::Duality));
  EXPECT_FALSE(has_kind(v, ViolationKind::Associativity));
}

TEST(LoadRing, SingularTopPairingIsDualityViolation) {
  RingDocument doc = f1_document();
  std::erase_if(doc.products, [](const ProductEntry& p) { return p.a.degree + p.b.degree == 4 && p.a.degree == 0; });
  auto v = validate(CohomologyRing::from_document(doc));
  EXPECT_TRUE(has_kind(v, ViolationKind::Duality));
}

TEST(LoadRing, CommutativityViolationWhenBothOrdersDisagree) {
  RingDocument doc = f1_document();
  doc.products.push_back({{2, 0}, {2, 1}, {Rational(0)}});
  doc.products.push_back({{2, 1}, {2, 0}, {Rational(1)}});
  auto v = validate(CohomologyRing::from_document(doc));
  EXPECT_TRUE(has_kind(v, ViolationKind::Commutativity));
}

TEST(LoadRing, MissingUnitProduct) {
  RingDocument doc = f1_document();
  std::erase_if(doc.products, [](const ProductEntry& p) { return p.a == BasisRef{0, 0} && p.b == BasisRef{2, 1}; });
  auto v = validate(CohomologyRing::from_document(doc));
  EXPECT_TRUE(has_kind(v, ViolationKind::MissingProduct));
}

TEST(LoadRing, StructuralErrors) {
  EXPECT_THROW(load_ring("{"), ParseError);
  EXPECT_THROW(load_ring(R"({"name":"x","complex_dim":1,"basis":[["1"],[]],"products":[],"fundamental":"p"})"), ParseError);
  RingDocument doc = f1_document();
  doc.products.push_back({{2, 5}, {2, 0}, {Rational(1)}});
  EXPECT_THROW(CohomologyRing::from_document(doc), ParseError);
  doc = f1_document();
  doc.products.push_back({{2, 0}, {2, 1}, {Rational(1), Rational(1)}});
  EXPECT_THROW(CohomologyRing::from_document(doc), ParseError);
}

TEST(Cup, Examples) {
  CohomologyRing p2 = projective_space(2).ring;
  Element h = p2.basis_element({2, 0});
  EXPECT_EQ(cup(p2, h, h), p2.basis_element({4, 0}));
  CohomologyRing f = f1().ring;
  Element a{2, {Rational(3), Rational(-1, 1)}};
  EXPECT_EQ(cup(f, f.unit(), a), a);
  CohomologyRing t1 = torus(1).ring;
  Element e1 = t1.basis_element({1, 0});
  EXPECT_TRUE(cup(t1, e1, e1).is_zero());
  EXPECT_EQ(cup(t1, e1, e1).degree, 2);
}

TEST(Cup, DegreeOverflowIsZero) {
  CohomologyRing p2 = projective_space(2).ring;
  Element pt = p2.basis_element({4, 0});
  Element r = cup(p2, pt, p2.basis_element({2, 0}));
  EXPECT_EQ(r.degree, 6);
  EXPECT_TRUE(r.is_zero());
}

TEST(Integrate, Examples) {
  CohomologyRing f = f1().ring;
  EXPECT_EQ(integrate(f, f.basis_element({4, 0})), Rational(1));
  EXPECT_EQ(integrate(f, f.zero(4)), Rational(0));
  CohomologyRing q = p1xp1().ring;
  EXPECT_EQ(integrate(q, cup(q, q.basis_element({2, 0}), q.basis_element({2, 1}))), Rational(1));
  EXPECT_THROW(integrate(f, f.unit()), std::invalid_argument);
}

TEST(SymbolicEta, Examples) {
  auto p2 = symbolic_eta(projective_space(2).ring);
  ASSERT_EQ(p2.coeffs.size(), 1u);
  EXPECT_EQ(p2.coeffs[0], P("t0", 1));
  auto f = symbolic_eta(f1().ring);
  ASSERT_EQ(f.coeffs.size(), 2u);
  EXPECT_EQ(f.coeffs[1], P("t1", 2));
  EXPECT_TRUE(symbolic_eta(hopf_surface().ring).coeffs.empty());
}

TEST(SymbolicCupPower, Examples) {
  auto p2 = symbolic_cup_power(projective_space(2).ring, 2);
  EXPECT_EQ(p2.degree, 4);
  EXPECT_EQ(p2.coeffs, std::vector<MultiPoly>{P("t0^2", 1)});
  auto q = symbolic_cup_power(p1xp1().ring, 2);
  EXPECT_EQ(q.coeffs, std::vector<MultiPoly>{P("2*t0*t1", 2)});
  auto zero = symbolic_cup_power(f1().ring, 0);
  EXPECT_EQ(zero.coeffs, std::vector<MultiPoly>{MultiPoly::one(2)});
  EXPECT_THROW(symbolic_cup_power(f1().ring, 3), std::invalid_argument);
}

TEST(SymbolicCupPower, Torus2MatchesWedgeExpansion) {
  auto sq = symbolic_cup_power(torus(2).ring, 2);
  ASSERT_EQ(sq.coeffs.size(), 1u);
  EXPECT_EQ(sq.coeffs[0], oracle::torus2_eta_squared());
}

TEST(CatalogRings, AllSatisfyAxioms) {
  for (const auto& e : catalog()) EXPECT_TRUE(validate(e.ring).empty()) << e.key;
}

TEST(Cup, CommutativeAndAssociativeProperty) {
  std::mt19937 rng(17);
  for (const auto& key : {"p2", "p1xp2", "torus2", "hopf", "dp7"}) {
    CohomologyRing ring = catalog_entry(key).ring;
    const int top = ring.top_degree();
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<int> deg(0, top);
      int da = deg(rng), db = deg(rng), dc = deg(rng);
      Element a = random_element(rng, ring, da), b = random_element(rng, ring, db), c = random_element(rng, ring, dc);
      Element ab = cup(ring, a, b), ba = cup(ring, b, a);
      if (da + db <= top) {
        int sign = (da * db) % 2 ? -1 : 1;
        for (std::size_t i = 0; i < ab.coeffs.size(); ++i) EXPECT_EQ(ab.coeffs[i], ba.coeffs[i] * Rational(sign));
      }
      if (da + db + dc <= top) {
        EXPECT_EQ(cup(ring, ab, c), cup(ring, a, cup(ring, b, c))) << key;
      }
    }
  }
}

TEST(SymbolicCupPower, ConcreteConsistencyProperty) {
  std::mt19937 rng(23);
  for (const auto& key : {"p3", "p1xp2", "f1", "dp7", "torus2"}) {
    CohomologyRing ring = catalog_entry(key).ring;
    for (int trial = 0; trial < 10; ++trial) {
      auto x = oracle::random_point(rng, ring.picard_rank());
      Element eta{2, x};
      Element power = ring.unit();
      for (int k = 0; k <= ring.complex_dim(); ++k) {
        EXPECT_EQ(symbolic_cup_power(ring, k).evaluate(x), power) << key << " k=" << k;
        power = cup(ring, power, eta);
      }
    }
  }
}

TEST(ChangeBasis, PreservesAxiomsAndIntersections) {
  CohomologyRing f = f1().ring;
  RationalMatrix q{{1, 1}, {0, 1}};
  CohomologyRing g = change_basis(f, 2, q);
  EXPECT_TRUE(validate(g).empty());
  // e'_1 = H + E, so e'_1 . e'_1 = 1 - 1 = 0.
  EXPECT_EQ(g.product({2, 1}, {2, 1}), std::vector<Rational>{Rational(0)});
  EXPECT_THROW(change_basis(f, 2, RationalMatrix{{1, 1}, {1, 1}}), std::invalid_argument);
}
