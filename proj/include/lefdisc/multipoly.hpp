#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lefdisc/errors.hpp"
#include "lefdisc/rational.hpp"

namespace lefdisc {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

// Graded-lex, largest first: higher total degree wins, ties broken lexicographically
// with the larger exponent of the earliest variable first (t0^2 > t0*t1 > t1^2).
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

// Multivariate polynomial in t0..t{n-1} with exact rational coefficients.
// Zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  explicit MultiPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static MultiPoly constant(std::size_t num_vars, const Rational& c) {
    MultiPoly p(num_vars);
    if (!c.is_zero()) p.terms_.emplace(Exponents(num_vars, 0), c);
    return p;
  }

  static MultiPoly one(std::size_t num_vars) { return constant(num_vars, Rational(1)); }

  static MultiPoly variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::out_of_range("variable index out of range");
    Exponents e(num_vars, 0);
    e[index] = 1;
    return monomial(std::move(e), Rational(1));
  }

  static MultiPoly monomial(Exponents exps, const Rational& c) {
    MultiPoly p(exps.size());
    if (!c.is_zero()) p.terms_.emplace(std::move(exps), c);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  // Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first)); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    return true;
  }

  const std::pair<const Exponents, Rational>& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.begin();
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != num_vars_) throw std::invalid_argument("exponent vector length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  MultiPoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.num_vars_);
    Exponents e(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out = one(num_vars_);
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != num_vars_) throw std::invalid_argument("evaluation point has wrong length");
    Rational sum;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < num_vars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
      sum += term;
    }
    return sum;
  }

  // Substitutes t_i -> sum_j columns[i][j] * s_j, producing a polynomial in
  // columns[i].size() variables. Used for linear changes of coordinates.
  MultiPoly substitute_linear(const std::vector<std::vector<Rational>>& rows) const {
    if (rows.size() != num_vars_) throw std::invalid_argument("substitution needs one row per variable");
    std::size_t target = rows.empty() ? 0 : rows.front().size();
    std::vector<MultiPoly> images;
    images.reserve(num_vars_);
    for (const auto& row : rows) {
      if (row.size() != target) throw std::invalid_argument("ragged substitution matrix");
      MultiPoly img(target);
      for (std::size_t j = 0; j < target; ++j) {
        Exponents e(target, 0);
        e[j] = 1;
        img.add_term(e, row[j]);
      }
      images.push_back(std::move(img));
    }
    MultiPoly out(target);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(target, c);
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (e[i]) term *= images[i].pow(e[i]);
      out += term;
    }
    return out;
  }

  // Exact quotient this / divisor. Throws std::domain_error if the division leaves a remainder.
  MultiPoly divide_exact(const MultiPoly& divisor) const {
    check_compatible(divisor);
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    MultiPoly rem = *this;
    MultiPoly quot(num_vars_);
    const auto& [lead_e, lead_c] = divisor.leading_term();
    Exponents shift(num_vars_);
    while (!rem.is_zero()) {
      const auto& [re, rc] = rem.leading_term();
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (re[i] < lead_e[i]) throw std::domain_error("polynomial division is not exact");
        shift[i] = re[i] - lead_e[i];
      }
      MultiPoly step = monomial(shift, rc / lead_c);
      rem -= step * divisor;
      quot += step;
    }
    return quot;
  }

  // Canonical text: graded-lex descending, e.g. "t0^2 - 1/2*t0*t1 + 3".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      bool negative = c.sign() < 0;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      Rational mag = c.abs();
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += "t" + std::to_string(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += mag.to_string();
      } else if (mag == Rational(1)) {
        out += mono;
      } else {
        out += mag.to_string() + "*" + mono;
      }
    }
    return out;
  }

  static MultiPoly parse(std::string_view text, std::size_t num_vars);

 private:
  void check_compatible(const MultiPoly& o) const {
    if (o.num_vars_ != num_vars_) throw std::invalid_argument("polynomials have different numbers of variables");
  }

  std::size_t num_vars_ = 0;
  TermMap terms_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

  MultiPoly parse() {
    MultiPoly result(num_vars_);
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      MultiPoly term = parse_term();
      if (negative) term *= Rational(-1);
      result += term;
      skip_space();
      if (at_end()) break;
      char op = peek();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
      ++pos_;
    }
    return result;
  }

 private:
  MultiPoly parse_term() {
    Rational coeff(1);
    Exponents exps(num_vars_, 0);
    while (true) {
      skip_space();
      if (at_end()) fail("expected a factor");
      if (peek() == 't') {
        ++pos_;
        unsigned long idx = parse_unsigned();
        if (idx >= num_vars_) fail("variable t" + std::to_string(idx) + " out of range");
        unsigned long power = 1;
        skip_space();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_space();
          power = parse_unsigned();
        }
        exps[idx] += static_cast<unsigned>(power);
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        Integer num = Rational::parse_integer(text_.substr(start, pos_ - start));
        Integer den = 1;
        skip_space();
        if (!at_end() && peek() == '/') {
          ++pos_;
          skip_space();
          std::size_t dstart = pos_;
          while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
          if (dstart == pos_) fail("expected a denominator");
          den = Rational::parse_integer(text_.substr(dstart, pos_ - dstart));
          if (den == 0) fail("zero denominator");
        }
        coeff *= Rational(num, den);
      } else {
        fail(std::string("unexpected character '") + peek() + "'");
      }
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    return MultiPoly::monomial(std::move(exps), coeff);
  }

  unsigned long parse_unsigned() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly MultiPoly::parse(std::string_view text, std::size_t num_vars) {
  return detail::PolyParser(text, num_vars).parse();
}

// p == scale * primitive, where primitive has integer coefficients with content 1
// and a positive leading (graded-lex first) coefficient.
struct PrimitivePart {
  MultiPoly primitive;
  Rational scale;
};

inline PrimitivePart normalize_primitive(const MultiPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot normalize the zero polynomial");
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
  }
  Rational scale(num_gcd, den_lcm);
  if (p.leading_term().second.sign() < 0) scale = -scale;
  return {p * scale.inverse(), scale};
}

}  // namespace lefdisc
