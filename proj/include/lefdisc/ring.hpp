#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lefdisc/errors.hpp"
#include "lefdisc/multipoly.hpp"
#include "lefdisc/rational.hpp"
#include "lefdisc/rational_matrix.hpp"

namespace lefdisc {

// Position of a basis element: cohomological degree and index within that degree.
struct BasisRef {
  int degree = 0;
  std::size_t index = 0;
  friend auto operator<=>(const BasisRef&, const BasisRef&) = default;
};

struct ProductEntry {
  BasisRef a;
  BasisRef b;
  std::vector<Rational> result;  // coordinates on the basis of degree a.degree + b.degree
};

// Raw contents of a ring file, before any structure is built or checked.
struct RingDocument {
  std::string name;
  int complex_dim = 0;
  std::vector<std::vector<std::string>> basis;  // one list per degree 0..2n
  std::vector<ProductEntry> products;
  std::string fundamental;
};

enum class ViolationKind { Shape, MissingProduct, Unit, Commutativity, Associativity, Duality };

inline std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Shape: return "shape";
    case ViolationKind::MissingProduct: return "missing-product";
    case ViolationKind::Unit: return "unit";
    case ViolationKind::Commutativity: return "commutativity";
    case ViolationKind::Associativity: return "associativity";
    case ViolationKind::Duality: return "duality";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

class RingValidationError : public std::runtime_error {
 public:
  explicit RingValidationError(std::vector<Violation> violations)
      : std::runtime_error(summary(violations)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summary(const std::vector<Violation>& v) {
    std::string s = "ring validation failed with " + std::to_string(v.size()) + " violation(s)";
    if (!v.empty()) s += "; first: " + v.front().message;
    return s;
  }
  std::vector<Violation> violations_;
};

// A cohomology class with rational coordinates. A degree above the top degree
// denotes the zero element of that formal degree (empty coordinates).
struct Element {
  int degree = 0;
  std::vector<Rational> coeffs;

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const Element&, const Element&) = default;
};

// A class whose coordinates are polynomials in the coordinates of H^2.
struct SymbolicElement {
  int degree = 0;
  std::size_t num_vars = 0;
  std::vector<MultiPoly> coeffs;

  Element evaluate(std::span<const Rational> point) const {
    Element e{degree, {}};
    e.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) e.coeffs.push_back(c.evaluate(point));
    return e;
  }
  friend bool operator==(const SymbolicElement&, const SymbolicElement&) = default;
};

// Finite graded-commutative algebra with a fundamental class: the rational
// cohomology ring of a compact complex manifold of complex dimension n.
// Immutable once built.
class CohomologyRing {
 public:
  CohomologyRing() = default;

  // Builds the structure-constant table. Products are read as given; for every
  // pair supplied in only one order the other order is filled in by the Koszul
  // sign rule. Throws ParseError on structural defects; ring axioms are checked
  // separately by validate().
  static CohomologyRing from_document(const RingDocument& doc) {
    CohomologyRing r;
    r.name_ = doc.name;
    r.n_ = doc.complex_dim;
    if (r.n_ < 1) throw ParseError("complex_dim must be at least 1");
    if (doc.basis.size() != static_cast<std::size_t>(2 * r.n_ + 1))
      throw ParseError("basis must list " + std::to_string(2 * r.n_ + 1) + " degrees, got " +
                       std::to_string(doc.basis.size()));
    r.basis_ = doc.basis;
    r.fundamental_ = doc.fundamental;

    const int top = r.top_degree();
    r.table_.assign(top + 1, {});
    r.given_.assign(top + 1, {});
    for (int da = 0; da <= top; ++da) {
      r.table_[da].resize(top + 1 - da);
      r.given_[da].resize(top + 1 - da);
      for (int db = 0; da + db <= top; ++db) {
        std::size_t cells = r.betti(da) * r.betti(db);
        r.table_[da][db].assign(cells, std::vector<Rational>(r.betti(da + db)));
        r.given_[da][db].assign(cells, 0);
      }
    }

    for (const auto& p : doc.products) {
      for (const BasisRef& ref : {p.a, p.b}) {
        if (ref.degree < 0 || ref.degree > top || ref.index >= r.betti(ref.degree))
          throw ParseError("product refers to missing basis element [" + std::to_string(ref.degree) + ", " +
                           std::to_string(ref.index) + "]");
      }
      int dc = p.a.degree + p.b.degree;
      if (dc > top) {
        for (const auto& c : p.result)
          if (!c.is_zero()) throw ParseError("product " + r.pair_name(p.a, p.b) + " lands above the top degree");
        continue;
      }
      if (p.result.size() != r.betti(dc))
        throw ParseError("product " + r.pair_name(p.a, p.b) + " has " + std::to_string(p.result.size()) +
                         " coordinates, expected " + std::to_string(r.betti(dc)));
      char& flag = r.given_[p.a.degree][p.b.degree][r.cell(p.a, p.b)];
      if (flag) throw ParseError("duplicate product entry " + r.pair_name(p.a, p.b));
      flag = 1;
      r.table_[p.a.degree][p.b.degree][r.cell(p.a, p.b)] = p.result;
    }

    // Fill unsupplied orders from the supplied ones.
    for (int da = 0; da <= top; ++da) {
      for (int db = 0; da + db <= top; ++db) {
        for (std::size_t i = 0; i < r.betti(da); ++i) {
          for (std::size_t j = 0; j < r.betti(db); ++j) {
            BasisRef a{da, i}, b{db, j};
            if (r.is_given(a, b) || !r.is_given(b, a)) continue;
            auto v = r.table_[db][da][r.cell(b, a)];
            if (koszul_sign(da, db) < 0)
              for (auto& c : v) c = -c;
            r.table_[da][db][r.cell(a, b)] = std::move(v);
          }
        }
      }
    }
    return r;
  }

  // Canonical document: every nonzero product with a <= b in (degree, index) order.
  RingDocument to_document() const {
    RingDocument doc{name_, n_, basis_, {}, fundamental_};
    const int top = top_degree();
    for (int da = 0; da <= top; ++da)
      for (std::size_t i = 0; i < betti(da); ++i)
        for (int db = da; da + db <= top; ++db)
          for (std::size_t j = (db == da ? i : 0); j < betti(db); ++j) {
            const auto& v = product({da, i}, {db, j});
            bool nonzero = false;
            for (const auto& c : v) nonzero = nonzero || !c.is_zero();
            if (nonzero) doc.products.push_back({{da, i}, {db, j}, v});
          }
    return doc;
  }

  static int koszul_sign(int da, int db) { return (da * db) % 2 ? -1 : 1; }

  const std::string& name() const { return name_; }
  int complex_dim() const { return n_; }
  int top_degree() const { return 2 * n_; }
  const std::string& fundamental_name() const { return fundamental_; }

  std::size_t betti(int d) const {
    if (d < 0 || d > top_degree()) return 0;
    return basis_[static_cast<std::size_t>(d)].size();
  }

  std::vector<std::size_t> betti_numbers() const {
    std::vector<std::size_t> out;
    for (int d = 0; d <= top_degree(); ++d) out.push_back(betti(d));
    return out;
  }

  // Dimension of H^2, the number of variables of every discriminant.
  std::size_t picard_rank() const { return betti(2); }

  const std::vector<std::vector<std::string>>& basis() const { return basis_; }
  const std::string& basis_name(BasisRef ref) const { return basis_.at(ref.degree).at(ref.index); }

  // Coordinates of a ∪ b on the basis of degree a.degree + b.degree (which must not exceed 2n).
  const std::vector<Rational>& product(BasisRef a, BasisRef b) const {
    return table_.at(a.degree).at(b.degree).at(cell(a, b));
  }

  bool is_given(BasisRef a, BasisRef b) const { return given_.at(a.degree).at(b.degree).at(cell(a, b)) != 0; }

  Element zero(int degree) const { return Element{degree, std::vector<Rational>(betti(degree))}; }

  Element basis_element(BasisRef ref) const {
    Element e = zero(ref.degree);
    e.coeffs.at(ref.index) = Rational(1);
    return e;
  }

  Element unit() const { return basis_element({0, 0}); }

 private:
  std::size_t cell(BasisRef a, BasisRef b) const { return a.index * betti(b.degree) + b.index; }

  std::string pair_name(BasisRef a, BasisRef b) const {
    return "[" + std::to_string(a.degree) + "," + std::to_string(a.index) + "]*[" + std::to_string(b.degree) + "," +
           std::to_string(b.index) + "]";
  }

  std::string name_;
  int n_ = 0;
  std::vector<std::vector<std::string>> basis_;
  std::string fundamental_;
  std::vector<std::vector<std::vector<std::vector<Rational>>>> table_;  // [da][db][cell] -> coordinates
  std::vector<std::vector<std::vector<char>>> given_;
};

inline Element cup(const CohomologyRing& ring, const Element& a, const Element& b) {
  if (a.coeffs.size() != ring.betti(a.degree) || b.coeffs.size() != ring.betti(b.degree))
    throw std::invalid_argument("cup: element coordinates do not match the basis");
  const int d = a.degree + b.degree;
  Element out = ring.zero(d);
  if (d > ring.top_degree()) return out;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j].is_zero()) continue;
      Rational s = a.coeffs[i] * b.coeffs[j];
      const auto& v = ring.product({a.degree, i}, {b.degree, j});
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) out.coeffs[k] += s * v[k];
    }
  }
  return out;
}

// Evaluation against the fundamental class.
inline Rational integrate(const CohomologyRing& ring, const Element& a) {
  if (a.degree != ring.top_degree())
    throw std::invalid_argument("integrate: element has degree " + std::to_string(a.degree) + ", expected " +
                                std::to_string(ring.top_degree()));
  if (a.coeffs.size() != 1) throw std::invalid_argument("integrate: top degree must be one-dimensional");
  return a.coeffs[0];
}

// eta = sum_s t_s beta_s over the degree-2 basis.
inline SymbolicElement symbolic_eta(const CohomologyRing& ring) {
  const std::size_t rho = ring.picard_rank();
  SymbolicElement eta{2, rho, {}};
  for (std::size_t s = 0; s < rho; ++s) eta.coeffs.push_back(MultiPoly::variable(rho, s));
  return eta;
}

inline SymbolicElement symbolic_cup(const CohomologyRing& ring, const SymbolicElement& a, const SymbolicElement& b) {
  if (a.num_vars != b.num_vars) throw std::invalid_argument("symbolic_cup: variable counts differ");
  if (a.coeffs.size() != ring.betti(a.degree) || b.coeffs.size() != ring.betti(b.degree))
    throw std::invalid_argument("symbolic_cup: element coordinates do not match the basis");
  const int d = a.degree + b.degree;
  SymbolicElement out{d, a.num_vars, std::vector<MultiPoly>(ring.betti(d), MultiPoly(a.num_vars))};
  if (d > ring.top_degree()) return out;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j].is_zero()) continue;
      const auto& v = ring.product({a.degree, i}, {b.degree, j});
      bool any = false;
      for (const auto& c : v) any = any || !c.is_zero();
      if (!any) continue;
      MultiPoly prod = a.coeffs[i] * b.coeffs[j];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) out.coeffs[k] += prod * v[k];
    }
  }
  return out;
}

inline SymbolicElement to_symbolic(const Element& e, std::size_t num_vars) {
  SymbolicElement s{e.degree, num_vars, {}};
  for (const auto& c : e.coeffs) s.coeffs.push_back(MultiPoly::constant(num_vars, c));
  return s;
}

// eta^k by iterated symbolic cup product; every coordinate is homogeneous of degree k.
inline SymbolicElement symbolic_cup_power(const CohomologyRing& ring, int k) {
  if (k < 0 || 2 * k > ring.top_degree())
    throw std::invalid_argument("symbolic_cup_power: need 0 <= 2k <= " + std::to_string(ring.top_degree()));
  const SymbolicElement eta = symbolic_eta(ring);
  SymbolicElement power = to_symbolic(ring.unit(), eta.num_vars);
  for (int i = 0; i < k; ++i) power = symbolic_cup(ring, power, eta);
  return power;
}

// Exact check of the ring axioms. Returns every violated identity.
inline std::vector<Violation> validate(const CohomologyRing& ring) {
  std::vector<Violation> out;
  const int top = ring.top_degree();
  auto name = [&](BasisRef r) { return ring.basis_name(r); };
  auto add = [&](ViolationKind k, std::string msg) { out.push_back({k, std::move(msg)}); };

  // Shape.
  if (ring.betti(0) != 1) add(ViolationKind::Shape, "shape: betti(0) = " + std::to_string(ring.betti(0)) + ", expected 1");
  if (ring.betti(top) != 1)
    add(ViolationKind::Shape, "shape: betti(" + std::to_string(top) + ") = " + std::to_string(ring.betti(top)) + ", expected 1");
  {
    std::set<std::string> seen;
    for (int d = 0; d <= top; ++d)
      for (const auto& s : ring.basis()[d])
        if (!seen.insert(s).second) add(ViolationKind::Shape, "shape: basis name '" + s + "' is not unique");
  }
  if (ring.betti(top) == 1 && ring.basis_name({top, 0}) != ring.fundamental_name())
    add(ViolationKind::Shape, "shape: fundamental '" + ring.fundamental_name() + "' is not the degree-" +
                                  std::to_string(top) + " basis element '" + ring.basis_name({top, 0}) + "'");
  if (ring.betti(0) != 1 || ring.betti(top) != 1) return out;

  // Unit.
  const BasisRef one{0, 0};
  for (int d = 0; d <= top; ++d) {
    for (std::size_t i = 0; i < ring.betti(d); ++i) {
      BasisRef x{d, i};
      Element expect = ring.basis_element(x);
      if (!ring.is_given(one, x) && !ring.is_given(x, one)) {
        add(ViolationKind::MissingProduct,
            "missing-product: " + name(one) + " * " + name(x) + " is not supplied (the unit must act as identity)");
        continue;
      }
      if (ring.product(one, x) != expect.coeffs)
        add(ViolationKind::Unit, "unit: " + name(one) + " * " + name(x) + " != " + name(x));
      if (!(x == one) && ring.product(x, one) != expect.coeffs)
        add(ViolationKind::Unit, "unit: " + name(x) + " * " + name(one) + " != " + name(x));
    }
  }

  // Graded commutativity, checked wherever both orders were supplied, and for odd squares.
  for (int da = 0; da <= top; ++da)
    for (int db = da; da + db <= top; ++db)
      for (std::size_t i = 0; i < ring.betti(da); ++i)
        for (std::size_t j = (da == db ? i : 0); j < ring.betti(db); ++j) {
          BasisRef a{da, i}, b{db, j};
          const int sign = CohomologyRing::koszul_sign(da, db);
          const auto& ab = ring.product(a, b);
          const auto& ba = ring.product(b, a);
          bool ok = true;
          for (std::size_t k = 0; k < ab.size(); ++k) ok = ok && ba[k] == (sign < 0 ? -ab[k] : ab[k]);
          if (a == b && sign < 0) {
            for (const auto& c : ab) ok = ok && c.is_zero();
          }
          if (!ok)
            add(ViolationKind::Commutativity, "commutativity: " + name(a) + " * " + name(b) + " != " +
                                                  (sign < 0 ? "-" : "") + name(b) + " * " + name(a));
        }

  // Associativity on all basis triples.
  for (int da = 0; da <= top; ++da)
    for (int db = 0; da + db <= top; ++db)
      for (int dc = 0; da + db + dc <= top; ++dc)
        for (std::size_t i = 0; i < ring.betti(da); ++i)
          for (std::size_t j = 0; j < ring.betti(db); ++j) {
            Element ab{da + db, ring.product({da, i}, {db, j})};
            for (std::size_t k = 0; k < ring.betti(dc); ++k) {
              Element c = ring.basis_element({dc, k});
              Element bc{db + dc, ring.product({db, j}, {dc, k})};
              Element left = cup(ring, ab, c);
              Element right = cup(ring, ring.basis_element({da, i}), bc);
              if (left != right)
                add(ViolationKind::Associativity, "associativity: (" + name({da, i}) + " * " + name({db, j}) + ") * " +
                                                      name({dc, k}) + " != " + name({da, i}) + " * (" + name({db, j}) +
                                                      " * " + name({dc, k}) + ")");
            }
          }

  // Poincare duality.
  for (int d = 0; d <= top; ++d) {
    const std::size_t r = ring.betti(d), c = ring.betti(top - d);
    if (r != c) {
      add(ViolationKind::Duality, "duality: betti(" + std::to_string(d) + ") = " + std::to_string(r) + " but betti(" +
                                      std::to_string(top - d) + ") = " + std::to_string(c));
      continue;
    }
    RationalMatrix pairing(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) pairing(i, j) = ring.product({d, i}, {top - d, j})[0];
    if (rank(pairing) != r)
      add(ViolationKind::Duality, "duality: pairing H^" + std::to_string(d) + " x H^" + std::to_string(top - d) +
                                      " is singular (rank " + std::to_string(rank(pairing)) + " < " + std::to_string(r) + ")");
  }
  return out;
}

inline CohomologyRing build_ring(const RingDocument& doc) {
  CohomologyRing ring = CohomologyRing::from_document(doc);
  auto violations = validate(ring);
  if (!violations.empty()) throw RingValidationError(std::move(violations));
  return ring;
}

// Ring obtained by replacing the degree-d basis e_i with e'_j = sum_i change(i, j) e_i.
// The same names are kept. change must be invertible.
inline CohomologyRing change_basis(const CohomologyRing& ring, int degree, const RationalMatrix& change) {
  const std::size_t b = ring.betti(degree);
  if (change.rows() != b || change.cols() != b) throw std::invalid_argument("change_basis: matrix has wrong size");
  auto inv = inverse(change);
  if (!inv) throw std::invalid_argument("change_basis: matrix is singular");

  auto to_old = [&](BasisRef ref) {
    if (ref.degree != degree) return ring.basis_element(ref);
    Element e = ring.zero(degree);
    for (std::size_t i = 0; i < b; ++i) e.coeffs[i] = change(i, ref.index);
    return e;
  };
  auto to_new = [&](Element e) {
    if (e.degree != degree) return e;
    Element out = ring.zero(degree);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) out.coeffs[i] += (*inv)(i, j) * e.coeffs[j];
    return out;
  };

  RingDocument doc{ring.name(), ring.complex_dim(), ring.basis(), {}, ring.fundamental_name()};
  const int top = ring.top_degree();
  for (int da = 0; da <= top; ++da)
    for (std::size_t i = 0; i < ring.betti(da); ++i)
      for (int db = da; da + db <= top; ++db)
        for (std::size_t j = (db == da ? i : 0); j < ring.betti(db); ++j) {
          Element p = to_new(cup(ring, to_old({da, i}), to_old({db, j})));
          if (!p.is_zero()) doc.products.push_back({{da, i}, {db, j}, p.coeffs});
        }
  return CohomologyRing::from_document(doc);
}

}  // namespace lefdisc
