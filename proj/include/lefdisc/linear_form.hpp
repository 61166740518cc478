#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefdisc/multipoly.hpp"
#include "lefdisc/rational.hpp"

namespace lefdisc {

// A rational linear form c0*t0 + ... + c{r-1}*t{r-1} on H^2, i.e. a rational
// homology class of degree two.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  static LinearForm parse(std::string_view text) { return LinearForm(parse_rational_list(text)); }

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  // Index of the first nonzero coefficient.
  std::size_t pivot() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) return i;
    throw std::invalid_argument("zero linear form has no pivot");
  }

  // Integer coefficients, content 1, first nonzero coefficient positive.
  LinearForm primitive() const {
    if (is_zero()) throw std::invalid_argument("zero linear form has no primitive normal form");
    Integer den_lcm = 1;
    Integer num_gcd = 0;
    for (const auto& c : coeffs_) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    if (coeffs_[pivot()].sign() < 0) scale = -scale;
    std::vector<Rational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c * scale);
    return LinearForm(std::move(out));
  }

  Rational apply(const std::vector<Rational>& point) const {
    if (point.size() != coeffs_.size()) throw std::invalid_argument("linear form and vector differ in length");
    Rational sum;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) sum += coeffs_[i] * point[i];
    return sum;
  }

  MultiPoly as_poly() const {
    MultiPoly p(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      Exponents e(coeffs_.size(), 0);
      e[i] = 1;
      p.add_term(e, coeffs_[i]);
    }
    return p;
  }

  std::string to_string() const { return format_rational_list(coeffs_); }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<Rational> coeffs_;
};

// Exact divisor power of a linear form; infinite for the zero polynomial.
class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  constexpr explicit Multiplicity(unsigned value) : value_(value) {}
  static constexpr Multiplicity infinite() {
    Multiplicity m;
    m.infinite_ = true;
    return m;
  }

  constexpr bool is_infinite() const { return infinite_; }
  unsigned value() const {
    if (infinite_) throw std::logic_error("infinite multiplicity has no finite value");
    return value_;
  }
  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

  friend constexpr bool operator==(const Multiplicity&, const Multiplicity&) = default;

 private:
  bool infinite_ = false;
  unsigned value_ = 0;
};

struct LinearDivision {
  MultiPoly quotient;
  bool exact = false;
};

// Divides p by the linear form l, treating p as a polynomial in the pivot
// variable of l with coefficients in the remaining variables (synthetic division).
inline LinearDivision divide_by_linear(const MultiPoly& p, const LinearForm& l) {
  const std::size_t nv = p.num_vars();
  if (l.size() != nv) throw std::invalid_argument("linear form length does not match polynomial");
  const std::size_t j = l.pivot();
  if (p.is_zero()) return {MultiPoly(nv), true};

  // p = sum_d coeffs[d] * t_j^d
  unsigned top = 0;
  for (const auto& [e, c] : p.terms()) top = std::max(top, e[j]);
  std::vector<MultiPoly> coeffs(top + 1, MultiPoly(nv));
  for (const auto& [e, c] : p.terms()) {
    Exponents stripped = e;
    stripped[j] = 0;
    coeffs[e[j]].add_term(stripped, c);
  }

  // l = c * (t_j - root), root = -(rest)/c
  const Rational& lead = l[j];
  MultiPoly root(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (i == j || l[i].is_zero()) continue;
    Exponents e(nv, 0);
    e[i] = 1;
    root.add_term(e, -l[i] / lead);
  }

  // Horner-style synthetic division by (t_j - root).
  std::vector<MultiPoly> quot(top, MultiPoly(nv));
  MultiPoly carry = coeffs[top];
  for (unsigned d = top; d-- > 0;) {
    quot[d] = carry;
    carry = coeffs[d] + root * carry;
  }
  if (!carry.is_zero()) return {MultiPoly(nv), false};

  MultiPoly q(nv);
  Rational inv = lead.inverse();
  for (unsigned d = 0; d < top; ++d) {
    for (const auto& [e, c] : quot[d].terms()) {
      Exponents shifted = e;
      shifted[j] += d;
      q.add_term(shifted, c * inv);
    }
  }
  return {std::move(q), true};
}

// Largest m with l^m | p.
inline Multiplicity linear_multiplicity(const MultiPoly& p, const LinearForm& l) {
  if (l.is_zero()) throw std::invalid_argument("linear_multiplicity: zero linear form");
  if (l.size() != p.num_vars()) throw std::invalid_argument("linear_multiplicity: length mismatch");
  if (!p.is_homogeneous()) throw std::invalid_argument("linear_multiplicity: polynomial is not homogeneous");
  if (p.is_zero()) return Multiplicity::infinite();
  unsigned m = 0;
  MultiPoly current = p;
  while (current.degree() > 0) {
    auto div = divide_by_linear(current, l);
    if (!div.exact) break;
    current = std::move(div.quotient);
    ++m;
  }
  return Multiplicity(m);
}

}  // namespace lefdisc
