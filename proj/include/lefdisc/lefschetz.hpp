#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefdisc/linear_form.hpp"
#include "lefdisc/multipoly.hpp"
#include "lefdisc/poly_matrix.hpp"
#include "lefdisc/ring.hpp"

namespace lefdisc {

enum class Symmetry { Symmetric, Skew };

inline std::string to_string(Symmetry s) { return s == Symmetry::Symmetric ? "symmetric" : "skew"; }

// Matrix of the pairing (x, y) -> integral of x ∪ y ∪ eta^k on H^{n-k}.
struct LefschetzMatrix {
  int k = 0;
  int space_degree = 0;
  PolyMatrix matrix;
  Symmetry symmetry = Symmetry::Symmetric;
};

inline void check_level(const CohomologyRing& ring, int k) {
  if (k < 1 || k > ring.complex_dim())
    throw std::invalid_argument("level k = " + std::to_string(k) + " is outside 1.." + std::to_string(ring.complex_dim()));
}

inline LefschetzMatrix lefschetz_matrix(const CohomologyRing& ring, int k) {
  check_level(ring, k);
  const int n = ring.complex_dim();
  const int d = n - k;
  const std::size_t b = ring.betti(d);
  const std::size_t rho = ring.picard_rank();
  const SymbolicElement power = symbolic_cup_power(ring, k);

  LefschetzMatrix out{k, d, PolyMatrix(b, b, rho), d % 2 ? Symmetry::Skew : Symmetry::Symmetric};
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      Element xy{2 * d, ring.product({d, i}, {d, j})};
      SymbolicElement top = symbolic_cup(ring, to_symbolic(xy, rho), power);
      out.matrix.set(i, j, top.coeffs.at(0));
    }
  }
  const bool ok = out.symmetry == Symmetry::Skew ? out.matrix.is_skew() : out.matrix.is_symmetric();
  if (!ok)
    throw std::logic_error("Lefschetz matrix at level " + std::to_string(k) + " is not " + to_string(out.symmetry));
  return out;
}

// delta_k = det of the level-k Lefschetz matrix, stored in primitive normal form.
struct Discriminant {
  int k = 0;
  int space_degree = 0;
  std::size_t space_dim = 0;      // b_{n-k}
  unsigned expected_degree = 0;   // k * b_{n-k}
  MultiPoly delta;                // primitive, the constant 1 when vacuous, zero when void
  Rational scale{1};              // det = scale * delta (1 when void)
  bool is_zero = false;           // void: the form degenerates for every eta
  std::optional<MultiPoly> pfaffian_part;  // primitive pfaffian, odd n-k with nonempty matrix

  bool vacuous() const { return space_dim == 0; }
};

inline Discriminant discriminant_from_matrix(const LefschetzMatrix& lm) {
  const PolyMatrix& m = lm.matrix;
  Discriminant out;
  out.k = lm.k;
  out.space_degree = lm.space_degree;
  out.space_dim = m.rows();
  out.expected_degree = static_cast<unsigned>(lm.k) * static_cast<unsigned>(m.rows());
  MultiPoly raw = det(m);
  if (raw.is_zero()) {
    out.is_zero = true;
    out.delta = raw;
  } else {
    auto prim = normalize_primitive(raw);
    out.delta = std::move(prim.primitive);
    out.scale = prim.scale;
  }
  if (lm.symmetry == Symmetry::Skew && m.rows() > 0 && m.rows() % 2 == 0) {
    MultiPoly pf = pfaffian(m);
    out.pfaffian_part = pf.is_zero() ? pf : normalize_primitive(pf).primitive;
  }
  return out;
}

inline Discriminant discriminant(const CohomologyRing& ring, int k) {
  return discriminant_from_matrix(lefschetz_matrix(ring, k));
}

inline std::vector<Discriminant> full_discriminant(const CohomologyRing& ring) {
  std::vector<Discriminant> out;
  for (int k = 1; k <= ring.complex_dim(); ++k) out.push_back(discriminant(ring, k));
  return out;
}

struct LevelVerdict {
  int k = 0;
  std::size_t space_dim = 0;
  std::size_t rank = 0;
  bool pass = false;
  bool vacuous() const { return space_dim == 0; }
};

struct LefschetzCheck {
  std::vector<LevelVerdict> levels;
  bool pass = true;
};

inline LefschetzCheck check_lefschetz_at(const std::vector<LefschetzMatrix>& matrices, std::span<const Rational> eta) {
  LefschetzCheck out;
  for (const auto& lm : matrices) {
    LevelVerdict v{lm.k, lm.matrix.rows(), 0, true};
    if (lm.matrix.num_vars() != eta.size())
      throw std::invalid_argument("eta has " + std::to_string(eta.size()) + " coordinates, expected " +
                                  std::to_string(lm.matrix.num_vars()));
    if (v.space_dim > 0) {
      v.rank = rank_at(lm.matrix, eta);
      v.pass = v.rank == v.space_dim;
    }
    out.pass = out.pass && v.pass;
    out.levels.push_back(v);
  }
  return out;
}

inline std::vector<LefschetzMatrix> all_lefschetz_matrices(const CohomologyRing& ring) {
  std::vector<LefschetzMatrix> out;
  for (int k = 1; k <= ring.complex_dim(); ++k) out.push_back(lefschetz_matrix(ring, k));
  return out;
}

inline LefschetzCheck check_lefschetz_at(const CohomologyRing& ring, std::span<const Rational> eta) {
  if (eta.size() != ring.picard_rank())
    throw std::invalid_argument("eta has " + std::to_string(eta.size()) + " coordinates, expected " +
                                std::to_string(ring.picard_rank()));
  return check_lefschetz_at(all_lefschetz_matrices(ring), eta);
}

struct SupportPair {
  int k = 0;
  unsigned multiplicity = 0;
  friend bool operator==(const SupportPair&, const SupportPair&) = default;
};

// A linear form with the levels whose discriminant it divides.
struct RayForm {
  LinearForm form;
  std::vector<SupportPair> support;
  std::vector<int> void_levels;  // levels with delta_k == 0, where every form divides infinitely often

  bool l_supported() const { return !support.empty(); }
  std::optional<unsigned> multiplicity_at(int k) const {
    for (const auto& s : support)
      if (s.k == k) return s.multiplicity;
    return std::nullopt;
  }
};

inline RayForm is_l_supported(const std::vector<Discriminant>& discs, const LinearForm& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("is_l_supported: zero form");
  RayForm out{alpha.primitive(), {}, {}};
  for (const auto& d : discs) {
    if (d.delta.num_vars() != alpha.size())
      throw std::invalid_argument("form has " + std::to_string(alpha.size()) + " coefficients, expected " +
                                  std::to_string(d.delta.num_vars()));
    if (d.is_zero) {
      out.void_levels.push_back(d.k);
      continue;
    }
    Multiplicity m = linear_multiplicity(d.delta, out.form);
    if (m.value() >= 1) out.support.push_back({d.k, m.value()});
  }
  return out;
}

inline RayForm is_l_supported(const CohomologyRing& ring, const LinearForm& alpha) {
  if (alpha.size() != ring.picard_rank())
    throw std::invalid_argument("form has " + std::to_string(alpha.size()) + " coefficients, expected " +
                                std::to_string(ring.picard_rank()));
  if (alpha.is_zero()) throw std::invalid_argument("is_l_supported: zero form");
  return is_l_supported(full_discriminant(ring), alpha);
}

namespace detail {

// Evaluation of an integer polynomial modulo the Mersenne prime 2^61 - 1. A
// nonzero residue at an integer point proves the polynomial is nonzero there.
class ModularPoly {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  explicit ModularPoly(const MultiPoly& p) : num_vars_(p.num_vars()) {
    const Integer prime(std::to_string(kPrime));
    for (const auto& [e, c] : p.terms()) {
      if (!c.is_integer()) throw std::invalid_argument("ModularPoly needs integer coefficients");
      Integer r = c.num() % prime;
      if (r < 0) r += prime;
      terms_.push_back({e, std::stoull(r.get_str())});
    }
  }

  std::uint64_t evaluate(const std::vector<std::int64_t>& x) const {
    std::vector<std::uint64_t> xm(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xm[i] = reduce(x[i]);
    std::uint64_t sum = 0;
    for (const auto& [e, c] : terms_) {
      std::uint64_t t = c;
      for (std::size_t i = 0; i < num_vars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t = mul(t, xm[i]);
      sum = add(sum, t);
    }
    return sum;
  }

 private:
  static std::uint64_t reduce(std::int64_t v) {
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(kPrime);
    if (r < 0) r += kPrime;
    return static_cast<std::uint64_t>(r);
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t s = lo + hi;
    return s >= kPrime ? s - kPrime : s;
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
  }

  struct Term {
    Exponents exps;
    std::uint64_t coeff;
  };
  std::size_t num_vars_;
  std::vector<Term> terms_;
};

// Cheap necessary test for l | p: p must vanish at integer points of the hyperplane l = 0.
inline bool may_divide(const ModularPoly& p, const std::vector<std::int64_t>& l) {
  std::size_t j = 0;
  while (l[j] == 0) ++j;
  static constexpr std::int64_t kSamples[2][8] = {{3, -7, 11, 5, -2, 13, 17, -19}, {-4, 9, 2, -15, 23, 6, -29, 8}};
  for (const auto& sample : kSamples) {
    std::vector<std::int64_t> x(l.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i == j) continue;
      std::int64_t v = sample[i % 8] + static_cast<std::int64_t>(i / 8);
      x[i] = l[j] * v;
      acc += l[i] * v;
    }
    x[j] = -acc;
    if (p.evaluate(x) != 0) return false;
  }
  return true;
}

}  // namespace detail

struct SearchResult {
  std::vector<RayForm> rays;
  std::vector<int> void_levels;
  std::size_t candidates = 0;  // primitive forms examined
};

// All primitive integer forms with coefficients in [-height, height], first
// nonzero coefficient positive, that divide some nonzero delta_k. Sorted in
// descending lexicographic order of coefficients.
inline SearchResult search_l_supported(const std::vector<Discriminant>& discs, std::size_t rho, int height) {
  if (height < 1) throw std::invalid_argument("search height must be at least 1");
  SearchResult out;
  std::vector<const Discriminant*> live;
  std::vector<detail::ModularPoly> filters;
  for (const auto& d : discs) {
    if (d.is_zero) {
      out.void_levels.push_back(d.k);
    } else if (d.delta.degree() > 0) {
      live.push_back(&d);
      filters.emplace_back(d.delta);
    }
  }
  if (rho == 0) return out;

  std::vector<std::int64_t> c(rho, -height);
  auto advance = [&]() {
    for (std::size_t i = rho; i-- > 0;) {
      if (c[i] < height) {
        ++c[i];
        return true;
      }
      c[i] = -height;
    }
    return false;
  };
  do {
    std::size_t first = 0;
    while (first < rho && c[first] == 0) ++first;
    if (first == rho || c[first] < 0) continue;
    std::int64_t g = 0;
    for (auto v : c) g = std::gcd(g, v);
    if (g != 1) continue;
    ++out.candidates;

    RayForm ray;
    for (std::size_t n = 0; n < live.size(); ++n) {
      if (!detail::may_divide(filters[n], c)) continue;
      if (ray.form.size() == 0) {
        std::vector<Rational> coeffs;
        for (auto v : c) coeffs.emplace_back(static_cast<long>(v));
        ray.form = LinearForm(std::move(coeffs));
      }
      Multiplicity m = linear_multiplicity(live[n]->delta, ray.form);
      if (m.value() >= 1) ray.support.push_back({live[n]->k, m.value()});
    }
    if (!ray.support.empty()) {
      ray.void_levels = out.void_levels;
      out.rays.push_back(std::move(ray));
    }
  } while (advance());

  std::sort(out.rays.begin(), out.rays.end(),
            [](const RayForm& a, const RayForm& b) { return a.form.coeffs() > b.form.coeffs(); });
  return out;
}

inline SearchResult search_l_supported(const CohomologyRing& ring, int height) {
  return search_l_supported(full_discriminant(ring), ring.picard_rank(), height);
}

struct CountBound {
  int k = 0;
  unsigned sum = 0;    // sum over found forms of their multiplicity at level k
  unsigned bound = 0;  // k * b_{n-k}
  bool ok = true;
};

inline std::vector<CountBound> verify_count_bound(const CohomologyRing& ring, const std::vector<RayForm>& found) {
  std::vector<CountBound> out;
  const int n = ring.complex_dim();
  for (int k = 1; k <= n; ++k) {
    CountBound line{k, 0, static_cast<unsigned>(k) * static_cast<unsigned>(ring.betti(n - k)), true};
    for (const auto& ray : found)
      if (auto m = ray.multiplicity_at(k)) line.sum += *m;
    line.ok = line.sum <= line.bound;
    out.push_back(line);
  }
  return out;
}

enum class ConeSign { Nonnegative, Nonpositive, Cut };

inline std::string to_string(ConeSign s) {
  switch (s) {
    case ConeSign::Nonnegative: return "nonnegative";
    case ConeSign::Nonpositive: return "nonpositive";
    case ConeSign::Cut: return "cut";
  }
  return "unknown";
}

// Whether the hyperplane alpha = 0 cuts the cone spanned by the generators.
inline ConeSign cone_sign_check(const std::vector<std::vector<Rational>>& generators, const LinearForm& alpha) {
  if (generators.empty()) throw std::invalid_argument("cone_sign_check: no generators");
  bool any_pos = false, any_neg = false;
  for (const auto& g : generators) {
    bool nonzero = false;
    for (const auto& x : g) nonzero = nonzero || !x.is_zero();
    if (!nonzero) throw std::invalid_argument("cone_sign_check: zero generator");
    int s = alpha.apply(g).sign();
    any_pos = any_pos || s > 0;
    any_neg = any_neg || s < 0;
  }
  if (any_pos && any_neg) return ConeSign::Cut;
  return any_neg ? ConeSign::Nonpositive : ConeSign::Nonnegative;
}

}  // namespace lefdisc
