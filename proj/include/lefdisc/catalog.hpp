#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lefdisc/geometry.hpp"
#include "lefdisc/rational_matrix.hpp"
#include "lefdisc/ring.hpp"

namespace lefdisc {

// A contraction of a catalog manifold with its expected cross-check outcome.
struct ContractionFixture {
  std::string label;
  ContractionRecord record;
  bool expected_ok = true;
  std::optional<unsigned> expected_observed;  // multiplicity at the predicted level, when predicted
};

struct CatalogEntry {
  std::string key;
  std::string description;
  CohomologyRing ring;
  std::optional<std::vector<Rational>> ample;
  std::optional<std::vector<std::vector<Rational>>> nef_generators;
  std::optional<std::vector<Rational>> lefschetz_witness;  // non-ample class known to satisfy the condition
  std::vector<ContractionFixture> fixtures;
};

namespace detail {

inline std::vector<Rational> ints(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

inline std::vector<Rational> unit_vector(std::size_t size, std::size_t i) {
  std::vector<Rational> v(size);
  v[i] = Rational(1);
  return v;
}

inline ContractionRecord record(int n, int dim_s, int dim_phi_s, int length, std::vector<Rational> ray) {
  ContractionRecord r;
  r.n = n;
  r.dim_S = dim_s;
  r.dim_phi_S = dim_phi_s;
  r.length = length;
  r.ray = LinearForm(std::move(ray));
  return r;
}

}  // namespace detail

inline CatalogEntry projective_space(int n) {
  if (n < 1) throw std::invalid_argument("projective_space: n must be at least 1");
  RingDocument doc;
  doc.name = "P" + std::to_string(n);
  doc.complex_dim = n;
  doc.basis.assign(2 * n + 1, {});
  auto power_name = [](int i) { return i == 0 ? std::string("1") : i == 1 ? std::string("h") : "h^" + std::to_string(i); };
  for (int i = 0; i <= n; ++i) doc.basis[2 * i] = {power_name(i)};
  for (int i = 0; i <= n; ++i)
    for (int j = i; i + j <= n; ++j) doc.products.push_back({{2 * i, 0}, {2 * j, 0}, detail::ints({1})});
  doc.fundamental = power_name(n);

  CatalogEntry e;
  e.key = "p" + std::to_string(n);
  e.description = "complex projective space of dimension " + std::to_string(n);
  e.ring = build_ring(doc);
  e.ample = detail::ints({1});
  e.nef_generators = std::vector<std::vector<Rational>>{detail::ints({1})};
  // Contraction to a point: S = X, phi(S) = pt, length n + 1.
  e.fixtures.push_back({"contraction to a point", detail::record(n, n, 0, n + 1, detail::ints({1})), true,
                        static_cast<unsigned>(n)});
  return e;
}

// Graded tensor product; (x ⊗ y)(x' ⊗ y') = (-1)^{deg y * deg x'} (x x') ⊗ (y y').
// Basis of each degree: pairs ordered by descending degree of the first factor,
// then by index in the first factor, then in the second.
inline CohomologyRing kunneth_product(const CohomologyRing& a, const CohomologyRing& b) {
  if (!validate(a).empty() || !validate(b).empty()) throw std::invalid_argument("kunneth_product: invalid factor ring");
  struct Pair {
    int da, db;
    std::size_t i, j;
  };
  const int n = a.complex_dim() + b.complex_dim();
  const int top = 2 * n;
  std::vector<std::vector<Pair>> pairs(top + 1);
  std::map<std::tuple<int, std::size_t, int, std::size_t>, std::size_t> position;
  RingDocument doc;
  doc.name = a.name() + " x " + b.name();
  doc.complex_dim = n;
  doc.basis.assign(top + 1, {});
  for (int d = 0; d <= top; ++d) {
    for (int da = std::min(d, a.top_degree()); da >= 0; --da) {
      int db = d - da;
      if (db > b.top_degree()) continue;
      for (std::size_t i = 0; i < a.betti(da); ++i)
        for (std::size_t j = 0; j < b.betti(db); ++j) {
          position[{da, i, db, j}] = pairs[d].size();
          pairs[d].push_back({da, db, i, j});
          doc.basis[d].push_back(a.basis_name({da, i}) + "|" + b.basis_name({db, j}));
        }
    }
  }
  doc.fundamental = a.fundamental_name() + "|" + b.fundamental_name();

  for (int d1 = 0; d1 <= top; ++d1)
    for (std::size_t p = 0; p < pairs[d1].size(); ++p)
      for (int d2 = d1; d1 + d2 <= top; ++d2)
        for (std::size_t q = (d2 == d1 ? p : 0); q < pairs[d2].size(); ++q) {
          const Pair& x = pairs[d1][p];
          const Pair& y = pairs[d2][q];
          const int ea = x.da + y.da, eb = x.db + y.db;
          if (ea > a.top_degree() || eb > b.top_degree()) continue;
          const auto& u = a.product({x.da, x.i}, {y.da, y.i});
          const auto& v = b.product({x.db, x.j}, {y.db, y.j});
          const Rational sign((x.db * y.da) % 2 ? -1 : 1);
          std::vector<Rational> result(pairs[d1 + d2].size());
          bool nonzero = false;
          for (std::size_t s = 0; s < u.size(); ++s) {
            if (u[s].is_zero()) continue;
            for (std::size_t t = 0; t < v.size(); ++t) {
              if (v[t].is_zero()) continue;
              result[position.at({ea, s, eb, t})] = sign * u[s] * v[t];
              nonzero = true;
            }
          }
          if (nonzero) doc.products.push_back({{d1, p}, {d2, q}, std::move(result)});
        }
  return build_ring(doc);
}

// Simply connected surface with H^2 intersection form m.
inline CatalogEntry surface_from_intersection_matrix(const RationalMatrix& m, std::string key = "surface",
                                                     std::vector<std::string> names = {}) {
  const std::size_t rho = m.rows();
  if (rho == 0 || m.cols() != rho) throw std::invalid_argument("intersection matrix must be square and nonempty");
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = 0; j < rho; ++j)
      if (m(i, j) != m(j, i)) throw std::invalid_argument("intersection matrix is not symmetric");
  if (rank(m) != rho) throw std::invalid_argument("intersection matrix is singular");
  if (names.empty())
    for (std::size_t i = 0; i < rho; ++i) names.push_back("b" + std::to_string(i));
  if (names.size() != rho) throw std::invalid_argument("wrong number of basis names");

  RingDocument doc;
  doc.name = key;
  doc.complex_dim = 2;
  doc.basis = {{"1"}, {}, names, {}, {"pt"}};
  doc.fundamental = "pt";
  doc.products.push_back({{0, 0}, {0, 0}, detail::ints({1})});
  for (std::size_t i = 0; i < rho; ++i) doc.products.push_back({{0, 0}, {2, i}, detail::unit_vector(rho, i)});
  doc.products.push_back({{0, 0}, {4, 0}, detail::ints({1})});
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = i; j < rho; ++j)
      if (!m(i, j).is_zero()) doc.products.push_back({{2, i}, {2, j}, {m(i, j)}});

  CatalogEntry e;
  e.key = std::move(key);
  e.description = "simply connected surface with intersection form of rank " + std::to_string(rho);
  e.ring = build_ring(doc);
  return e;
}

// Exterior algebra on 2n degree-one generators: the cohomology of a complex n-torus.
inline CatalogEntry torus(int n) {
  if (n < 1) throw std::invalid_argument("torus: n must be at least 1");
  if (n > 15) throw std::invalid_argument("torus: n too large");
  const int gens = 2 * n;
  RingDocument doc;
  doc.name = "T" + std::to_string(n);
  doc.complex_dim = n;
  doc.basis.assign(gens + 1, {});

  std::vector<std::vector<std::uint32_t>> subsets(gens + 1);
  for (std::uint32_t mask = 0; mask < (1u << gens); ++mask) subsets[__builtin_popcount(mask)].push_back(mask);
  std::map<std::uint32_t, std::size_t> index;
  for (int d = 0; d <= gens; ++d) {
    // Lexicographic order on sorted generator lists.
    std::sort(subsets[d].begin(), subsets[d].end(), [](std::uint32_t x, std::uint32_t y) {
      for (; x && y; x &= x - 1, y &= y - 1) {
        int a = __builtin_ctz(x), b = __builtin_ctz(y);
        if (a != b) return a < b;
      }
      return false;
    });
    for (std::size_t i = 0; i < subsets[d].size(); ++i) {
      std::uint32_t mask = subsets[d][i];
      index[mask] = i;
      std::string name;
      for (int g = 0; g < gens; ++g)
        if (mask >> g & 1u) name += (name.empty() ? "e" : "^e") + std::to_string(g + 1);
      doc.basis[d].push_back(name.empty() ? "1" : name);
    }
  }
  doc.fundamental = doc.basis[gens][0];

  for (int d1 = 0; d1 <= gens; ++d1)
    for (std::size_t p = 0; p < subsets[d1].size(); ++p)
      for (int d2 = d1; d1 + d2 <= gens; ++d2)
        for (std::size_t q = (d2 == d1 ? p : 0); q < subsets[d2].size(); ++q) {
          std::uint32_t s = subsets[d1][p], t = subsets[d2][q];
          if (s & t) continue;
          // Sign of sorting the concatenation: one transposition per pair (x in s, y in t) with x > y.
          int inversions = 0;
          for (int x = 0; x < gens; ++x)
            if (s >> x & 1u) inversions += __builtin_popcount(t & ((1u << x) - 1));
          std::vector<Rational> result(subsets[d1 + d2].size());
          result[index.at(s | t)] = Rational(inversions % 2 ? -1 : 1);
          doc.products.push_back({{d1, p}, {d2, q}, std::move(result)});
        }

  CatalogEntry e;
  e.key = "torus" + std::to_string(n);
  e.description = "complex torus of dimension " + std::to_string(n) + " (exterior algebra on " + std::to_string(gens) +
                  " generators)";
  e.ring = build_ring(doc);
  // eta = e1^e2 + e3^e4 + ..., a symplectic form.
  std::vector<Rational> witness(e.ring.betti(2));
  for (int g = 0; g < gens; g += 2) witness[index.at((1u << g) | (1u << (g + 1)))] = Rational(1);
  e.lefschetz_witness = std::move(witness);
  return e;
}

inline CatalogEntry hopf_surface() {
  RingDocument doc;
  doc.name = "Hopf";
  doc.complex_dim = 2;
  doc.basis = {{"1"}, {"e1"}, {}, {"e3"}, {"pt"}};
  doc.fundamental = "pt";
  doc.products = {{{0, 0}, {0, 0}, detail::ints({1})},
                  {{0, 0}, {1, 0}, detail::ints({1})},
                  {{0, 0}, {3, 0}, detail::ints({1})},
                  {{0, 0}, {4, 0}, detail::ints({1})},
                  {{1, 0}, {3, 0}, detail::ints({1})}};
  CatalogEntry e;
  e.key = "hopf";
  e.description = "Hopf surface (S^1 x S^3), not Kaehler";
  e.ring = build_ring(doc);
  return e;
}

inline CatalogEntry p1xp1() {
  CatalogEntry e;
  e.key = "p1xp1";
  e.description = "product of two projective lines";
  e.ring = kunneth_product(projective_space(1).ring, projective_space(1).ring);
  e.ample = detail::ints({1, 1});
  e.nef_generators = std::vector<std::vector<Rational>>{detail::ints({1, 0}), detail::ints({0, 1})};
  // Rulings: S = X mapping onto a line; the fibre class pairs with the other factor's hyperplane.
  e.fixtures.push_back({"projection to the first factor", detail::record(2, 2, 1, 2, detail::ints({0, 1})), true, 1u});
  e.fixtures.push_back({"projection to the second factor", detail::record(2, 2, 1, 2, detail::ints({1, 0})), true, 1u});
  return e;
}

inline CatalogEntry p1xp2() {
  CatalogEntry e;
  e.key = "p1xp2";
  e.description = "product of a projective line and a projective plane";
  e.ring = kunneth_product(projective_space(1).ring, projective_space(2).ring);
  e.ample = detail::ints({1, 1});
  e.nef_generators = std::vector<std::vector<Rational>>{detail::ints({1, 0}), detail::ints({0, 1})};
  e.fixtures.push_back({"projection to P2 (line fibres)", detail::record(3, 3, 2, 2, detail::ints({1, 0})), true, 1u});
  e.fixtures.push_back({"projection to P1 (plane fibres)", detail::record(3, 3, 1, 3, detail::ints({0, 1})), true, 2u});
  return e;
}

// Hirzebruch surface F1 = P2 blown up at a point, basis (H, E).
inline CatalogEntry f1() {
  CatalogEntry e = surface_from_intersection_matrix(RationalMatrix{{1, 0}, {0, -1}}, "F1", {"H", "E"});
  e.key = "f1";
  e.description = "Hirzebruch surface F1 (P2 blown up at one point), basis H, E";
  e.ample = detail::ints({2, -1});
  e.nef_generators = std::vector<std::vector<Rational>>{detail::ints({1, 0}), detail::ints({1, -1})};
  // D = aH + bE: D.E = -b, D.(H - E) = a + b.
  e.fixtures.push_back({"blow-down of the (-1)-curve", detail::record(2, 1, 0, 1, detail::ints({0, -1})), true, {}});
  e.fixtures.push_back({"ruling over P1", detail::record(2, 2, 1, 2, detail::ints({1, 1})), true, 1u});
  return e;
}

// P2 blown up at two points, basis (H, E1, E2).
inline CatalogEntry dp7() {
  CatalogEntry e =
      surface_from_intersection_matrix(RationalMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}, "dP7", {"H", "E1", "E2"});
  e.key = "dp7";
  e.description = "del Pezzo surface of degree 7 (P2 blown up at two points), basis H, E1, E2";
  e.ample = detail::ints({3, -1, -1});
  e.nef_generators =
      std::vector<std::vector<Rational>>{detail::ints({1, 0, 0}), detail::ints({1, -1, 0}), detail::ints({1, 0, -1})};
  e.fixtures.push_back({"blow-down of E1", detail::record(2, 1, 0, 1, detail::ints({0, -1, 0})), true, {}});
  e.fixtures.push_back({"blow-down of E2", detail::record(2, 1, 0, 1, detail::ints({0, 0, -1})), true, {}});
  e.fixtures.push_back({"blow-down of the line H - E1 - E2", detail::record(2, 1, 0, 1, detail::ints({1, 1, 1})), true, {}});
  return e;
}

inline std::vector<std::string> catalog_keys() {
  return {"p1", "p2", "p3", "p1xp1", "p1xp2", "f1", "dp7", "torus1", "torus2", "hopf"};
}

// Listed keys plus the parametric families p<N> and torus<N>.
inline CatalogEntry catalog_entry(const std::string& key) {
  auto numeric_suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (key.rfind(prefix, 0) != 0 || key.size() == prefix.size()) return std::nullopt;
    for (std::size_t i = prefix.size(); i < key.size(); ++i)
      if (key[i] < '0' || key[i] > '9') return std::nullopt;
    return std::stoi(key.substr(prefix.size()));
  };
  if (key == "p1xp1") return p1xp1();
  if (key == "p1xp2") return p1xp2();
  if (key == "f1") return f1();
  if (key == "dp7") return dp7();
  if (key == "hopf") return hopf_surface();
  if (auto n = numeric_suffix("torus")) return torus(*n);
  if (auto n = numeric_suffix("p")) return projective_space(*n);
  throw std::invalid_argument("unknown catalog key '" + key + "'");
}

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& key : catalog_keys()) out.push_back(catalog_entry(key));
  return out;
}

}  // namespace lefdisc
