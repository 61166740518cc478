#include <gtest/gtest.h>

#include <random>

#include "lefdisc/lefdisc.hpp"
#include "oracles.hpp"

using namespace lefdisc;

namespace {

MultiPoly P(const std::string& text, std::size_t nv) { return MultiPoly::parse(text, nv); }

std::vector<Rational> R(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

LinearForm L(std::initializer_list<long> v) { return LinearForm(R(v)); }

// Equal up to a nonzero rational scalar.
bool proportional(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return normalize_primitive(a).primitive == normalize_primitive(b).primitive;
}

std::vector<std::vector<Rational>> rows_of(const RationalMatrix& m) { return m.to_rows(); }

}  // namespace

TEST(LefschetzMatrixTest, Examples) {
  auto p2 = lefschetz_matrix(projective_space(2).ring, 2);
  ASSERT_EQ(p2.matrix.rows(), 1u);
  EXPECT_EQ(p2.matrix(0, 0), P("t0^2", 1));
  EXPECT_EQ(p2.symmetry, Symmetry::Symmetric);
  EXPECT_EQ(lefschetz_matrix(projective_space(2).ring, 1).matrix.rows(), 0u);
  EXPECT_THROW(lefschetz_matrix(projective_space(2).ring, 3), std::invalid_argument);
  EXPECT_THROW(lefschetz_matrix(projective_space(2).ring, 0), std::invalid_argument);
}

TEST(LefschetzMatrixTest, Torus1TopLevelActsOnDegreeZero) {
  auto lm = lefschetz_matrix(torus(1).ring, 1);
  EXPECT_EQ(lm.space_degree, 0);
  ASSERT_EQ(lm.matrix.rows(), 1u);
  EXPECT_EQ(lm.matrix(0, 0), P("t0", 1));
  EXPECT_EQ(lm.symmetry, Symmetry::Symmetric);
}

TEST(LefschetzMatrixTest, Torus2LevelOneMatchesWedgeOracle) {
  auto lm = lefschetz_matrix(torus(2).ring, 1);
  EXPECT_EQ(lm.symmetry, Symmetry::Skew);
  EXPECT_EQ(lm.matrix, oracle::torus2_level1_matrix());
}

TEST(DiscriminantTest, Examples) {
  auto p2 = discriminant(projective_space(2).ring, 2);
  EXPECT_EQ(p2.delta, P("t0^2", 1));
  EXPECT_EQ(p2.expected_degree, 2u);
  auto q = discriminant(p1xp1().ring, 2);
  EXPECT_EQ(q.delta, P("t0*t1", 2));
  EXPECT_EQ(q.scale, Rational(2));
  auto hopf = discriminant(hopf_surface().ring, 1);
  EXPECT_TRUE(hopf.is_zero);
  EXPECT_TRUE(hopf.delta.is_zero());
  EXPECT_EQ(hopf.space_dim, 1u);
}

TEST(DiscriminantTest, FullDiscriminantExamples) {
  auto p1 = full_discriminant(projective_space(1).ring);
  ASSERT_EQ(p1.size(), 1u);
  EXPECT_EQ(p1[0].delta, P("t0", 1));

  auto f = full_discriminant(f1().ring);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_TRUE(f[0].vacuous());
  EXPECT_EQ(f[0].delta, MultiPoly::one(2));
  EXPECT_EQ(f[1].delta, P("t0^2 - t1^2", 2));

  auto t = full_discriminant(torus(2).ring);
  MultiPoly q = oracle::torus2_eta_squared();
  ASSERT_EQ(t.size(), 2u);
  EXPECT_TRUE(proportional(t[1].delta, q));
  EXPECT_TRUE(proportional(t[0].delta, q * q));
  ASSERT_TRUE(t[0].pfaffian_part.has_value());
  EXPECT_TRUE(proportional(*t[0].pfaffian_part, q));
  EXPECT_TRUE(proportional(oracle::leibniz_det(oracle::torus2_level1_matrix()), q * q));
}

TEST(DiscriminantTest, Torus1) {
  auto d = full_discriminant(torus(1).ring);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].delta, P("t0", 1));
  EXPECT_EQ(d[0].expected_degree, 1u);
  EXPECT_FALSE(d[0].pfaffian_part.has_value());
}

TEST(DiscriminantTest, ProjectiveThreeSpace) {
  auto d = full_discriminant(projective_space(3).ring);
  EXPECT_EQ(d[0].delta, P("t0", 1));
  EXPECT_TRUE(d[1].vacuous());
  EXPECT_EQ(d[2].delta, P("t0^3", 1));
}

TEST(DiscriminantTest, DegreeAndParityLaws) {
  for (const auto& e : catalog()) {
    for (const auto& d : full_discriminant(e.ring)) {
      if (d.is_zero) continue;
      EXPECT_TRUE(d.delta.is_homogeneous()) << e.key;
      EXPECT_EQ(d.delta.degree(), static_cast<int>(d.expected_degree)) << e.key << " k=" << d.k;
      if (d.space_degree % 2 == 1 && d.space_dim > 0) {
        ASSERT_TRUE(d.pfaffian_part.has_value()) << e.key;
        EXPECT_EQ(*d.pfaffian_part * *d.pfaffian_part, d.delta) << e.key;
      }
    }
  }
}

TEST(CheckLefschetz, Examples) {
  EXPECT_TRUE(check_lefschetz_at(projective_space(2).ring, R({1})).pass);
  auto f = f1().ring;
  auto bad = check_lefschetz_at(f, R({1, 1}));
  EXPECT_FALSE(bad.pass);
  ASSERT_EQ(bad.levels.size(), 2u);
  EXPECT_TRUE(bad.levels[0].pass);
  EXPECT_TRUE(bad.levels[0].vacuous());
  EXPECT_FALSE(bad.levels[1].pass);
  EXPECT_TRUE(check_lefschetz_at(f, R({1, 0})).pass);
  EXPECT_THROW(check_lefschetz_at(f, R({1})), std::invalid_argument);
}

TEST(CheckLefschetz, Torus2Witness) {
  auto e = torus(2);
  ASSERT_TRUE(e.lefschetz_witness.has_value());
  EXPECT_TRUE(check_lefschetz_at(e.ring, *e.lefschetz_witness).pass);
  std::vector<Rational> degenerate(6);
  degenerate[0] = Rational(1);
  EXPECT_FALSE(check_lefschetz_at(e.ring, degenerate).pass);
}

TEST(CheckLefschetz, AmpleClassesPass) {
  for (const auto& e : catalog())
    if (e.ample) {
      EXPECT_TRUE(check_lefschetz_at(e.ring, *e.ample).pass) << e.key;
    }
}

TEST(CheckLefschetz, PointPolynomialConsistencyProperty) {
  std::mt19937 rng(41);
  for (const auto& key : {"p1xp1", "p1xp2", "f1", "dp7", "torus2", "p3"}) {
    auto ring = catalog_entry(key).ring;
    auto discs = full_discriminant(ring);
    for (int trial = 0; trial < 25; ++trial) {
      auto x = oracle::random_point(rng, ring.picard_rank(), 2);
      auto verdict = check_lefschetz_at(ring, x);
      for (std::size_t i = 0; i < discs.size(); ++i) {
        if (discs[i].is_zero) continue;
        EXPECT_EQ(verdict.levels[i].pass, !discs[i].delta.evaluate(x).is_zero()) << key;
      }
    }
  }
}

TEST(CheckLefschetz, ScaleInvarianceProperty) {
  std::mt19937 rng(43);
  for (const auto& key : {"p1xp2", "f1", "dp7", "torus2"}) {
    auto ring = catalog_entry(key).ring;
    for (int trial = 0; trial < 20; ++trial) {
      auto x = oracle::random_point(rng, ring.picard_rank(), 2);
      auto c = oracle::random_point(rng, 1)[0];
      if (c.is_zero()) c = Rational(-5, 3);
      std::vector<Rational> y;
      for (const auto& v : x) y.push_back(v * c);
      auto a = check_lefschetz_at(ring, x), b = check_lefschetz_at(ring, y);
      ASSERT_EQ(a.levels.size(), b.levels.size());
      for (std::size_t i = 0; i < a.levels.size(); ++i) EXPECT_EQ(a.levels[i].pass, b.levels[i].pass);
    }
  }
}

TEST(BasisCovariance, DiscriminantsAndRaysProperty) {
  std::mt19937 rng(47);
  for (const auto& key : {"f1", "p1xp1", "p1xp2", "dp7"}) {
    auto ring = catalog_entry(key).ring;
    const std::size_t rho = ring.picard_rank();
    auto discs = full_discriminant(ring);
    for (int trial = 0; trial < 8; ++trial) {
      RationalMatrix q = oracle::random_invertible(rng, rho);
      auto changed = change_basis(ring, 2, q);
      auto discs2 = full_discriminant(changed);
      for (std::size_t i = 0; i < discs.size(); ++i)
        EXPECT_TRUE(proportional(discs2[i].delta, discs[i].delta.substitute_linear(rows_of(q)))) << key;
      // alpha'(t') = alpha(Q t'), so alpha' = Q^T alpha.
      std::vector<LinearForm> forms;
      for (const auto& ray : search_l_supported(discs, rho, 2).rays) forms.push_back(ray.form);
      for (int r = 0; r < 3; ++r) forms.push_back(oracle::random_form(rng, rho, 2));
      for (const auto& alpha : forms) {
        std::vector<Rational> image(rho);
        for (std::size_t j = 0; j < rho; ++j)
          for (std::size_t i = 0; i < rho; ++i) image[j] += q(i, j) * alpha[i];
        auto before = is_l_supported(discs, alpha);
        auto after = is_l_supported(discs2, LinearForm(image));
        EXPECT_EQ(before.support, after.support) << key;
      }
    }
  }
}

TEST(LSupport, Examples) {
  auto f = f1().ring;
  EXPECT_EQ(is_l_supported(f, L({1, 1})).support, (std::vector<SupportPair>{{2, 1}}));
  EXPECT_TRUE(is_l_supported(f, L({0, 1})).support.empty());
  EXPECT_EQ(is_l_supported(projective_space(2).ring, L({1})).support, (std::vector<SupportPair>{{2, 2}}));
  EXPECT_THROW(is_l_supported(f, L({0, 0})), std::invalid_argument);
  EXPECT_THROW(is_l_supported(f, L({1})), std::invalid_argument);
  EXPECT_EQ(is_l_supported(f, L({-2, -2})).form, L({1, 1}));
}

TEST(LSupport, VoidLevelsAreAnnotated) {
  auto discs = full_discriminant(hopf_surface().ring);
  for (const auto& d : discs) EXPECT_TRUE(d.is_zero);
  auto r = search_l_supported(discs, 0, 3);
  EXPECT_TRUE(r.rays.empty());
  EXPECT_EQ(r.void_levels, (std::vector<int>{1, 2}));
}

TEST(Search, Examples) {
  auto q = search_l_supported(p1xp1().ring, 3);
  ASSERT_EQ(q.rays.size(), 2u);
  EXPECT_EQ(q.rays[0].form, L({1, 0}));
  EXPECT_EQ(q.rays[1].form, L({0, 1}));
  EXPECT_EQ(q.rays[0].support, (std::vector<SupportPair>{{2, 1}}));

  EXPECT_TRUE(search_l_supported(dp7().ring, 5).rays.empty());

  auto f = search_l_supported(f1().ring, 2);
  ASSERT_EQ(f.rays.size(), 2u);
  EXPECT_EQ(f.rays[0].form, L({1, 1}));
  EXPECT_EQ(f.rays[1].form, L({1, -1}));
  EXPECT_EQ(f.rays[1].support, (std::vector<SupportPair>{{2, 1}}));
}

TEST(Search, AgreesWithExhaustiveDivisionProperty) {
  for (const auto& key : {"f1", "p1xp2", "p1xp1", "dp7"}) {
    auto ring = catalog_entry(key).ring;
    auto discs = full_discriminant(ring);
    const std::size_t rho = ring.picard_rank();
    const int h = rho == 3 ? 2 : 4;
    std::vector<std::vector<Rational>> expected;
    std::vector<long> c(rho, -h);
    while (true) {
      bool zero = std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
      if (!zero) {
        std::vector<Rational> v(c.begin(), c.end());
        LinearForm form(v);
        if (form.primitive() == form) {
          bool supported = false;
          for (const auto& d : discs)
            if (!d.is_zero && d.delta.degree() > 0 &&
                oracle::multiplicity_by_division(d.delta, form.as_poly()) > 0)
              supported = true;
          if (supported) expected.push_back(v);
        }
      }
      std::size_t i = rho;
      while (i > 0 && c[i - 1] == h) c[--i] = -h;
      if (i == 0) break;
      ++c[i - 1];
    }
    std::sort(expected.rbegin(), expected.rend());
    auto found = search_l_supported(ring, h);
    ASSERT_EQ(found.rays.size(), expected.size()) << key;
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(found.rays[i].form.coeffs(), expected[i]) << key;
  }
}

TEST(CountBoundTest, Examples) {
  for (const auto& key : {"p1xp1", "f1", "p2"}) {
    auto ring = catalog_entry(key).ring;
    auto bound = verify_count_bound(ring, search_l_supported(ring, 5).rays);
    ASSERT_EQ(bound.size(), 2u);
    EXPECT_EQ(bound[1].sum, 2u) << key;
    EXPECT_EQ(bound[1].bound, 2u) << key;
    EXPECT_TRUE(bound[1].ok);
  }
}

TEST(CountBoundTest, HoldsOnCatalog) {
  for (const auto& e : catalog()) {
    for (const auto& line : verify_count_bound(e.ring, search_l_supported(e.ring, 3).rays)) EXPECT_TRUE(line.ok) << e.key;
  }
}

TEST(ConeSign, Examples) {
  std::vector<std::vector<Rational>> nef{R({1, 0}), R({1, -1})};
  EXPECT_EQ(cone_sign_check(nef, L({1, 1})), ConeSign::Nonnegative);
  EXPECT_EQ(cone_sign_check(nef, L({0, 1})), ConeSign::Nonpositive);
  EXPECT_EQ(cone_sign_check({R({1, 0}), R({0, 1})}, L({1, -1})), ConeSign::Cut);
  EXPECT_THROW(cone_sign_check({}, L({1, 0})), std::invalid_argument);
  EXPECT_THROW(cone_sign_check({R({0, 0})}, L({1, 0})), std::invalid_argument);
}

TEST(ConeSign, LSupportedRaysDoNotCutNefCones) {
  for (const auto& e : catalog()) {
    if (!e.nef_generators) continue;
    for (const auto& ray : search_l_supported(e.ring, 3).rays)
      EXPECT_NE(cone_sign_check(*e.nef_generators, ray.form), ConeSign::Cut) << e.key << " " << ray.form.to_string();
  }
}
