#pragma once

// Sparse Laurent polynomials in two variables with complex coefficients.
// The representation keeps the support (a sorted list of exponent pairs)
// separate from the coefficient table, so coordinate changes act on the
// exponents alone.  Gradings and initial forms use the min convention:
// in_{(u,v)}(f) collects the terms minimizing <(i,j),(u,v)>.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tropfactor {

using Complex = std::complex<double>;

/// Exponent pair (i, j) of the monomial x^i y^j.  Entries may be negative
/// after a unimodular change of coordinates.
struct Exponent {
  long long i = 0;
  long long j = 0;
  friend constexpr bool operator==(const Exponent&, const Exponent&) = default;
  friend constexpr auto operator<=>(const Exponent&, const Exponent&) = default;
};

/// Grading direction (u, v), not both zero.  <(i,j),(u,v)> = i*u + j*v ranks
/// the support points; (1,1) gives the usual total degree.
struct Direction {
  long long u = 0;
  long long v = 0;
};

struct Term {
  Exponent e;
  Complex c;
  friend bool operator==(const Term&, const Term&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

/// base^e for integer e; binary powering, 1/x for negative exponents.
inline Complex ipow(Complex base, long long e) {
  if (e < 0) {
    if (base == Complex(0.0, 0.0))
      throw std::domain_error("zero base with negative exponent");
    return 1.0 / ipow(base, -e);
  }
  Complex acc(1.0, 0.0);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline long long checked_add(long long a, long long b) {
  long long r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

}  // namespace detail

/// Immutable sparse polynomial.  Terms are unique, sorted lexicographically
/// by (i, j), and every stored coefficient has magnitude above the relative
/// drop tolerance used at construction.  All operations are pure; values are
/// safe to share across threads.
class SparsePoly {
 public:
  static constexpr double kDropTolerance = 1e-12;

  SparsePoly() = default;

  explicit SparsePoly(Complex constant) {
    if (constant != Complex(0.0, 0.0)) terms_.push_back({{0, 0}, constant});
  }

  /// Canonicalizes an arbitrary term list: duplicate exponents are summed,
  /// then terms with |c| <= drop_tolerance * max|c| are removed.
  static SparsePoly from_terms(const std::vector<Term>& terms,
                               double drop_tolerance = kDropTolerance) {
    std::map<Exponent, Complex> acc;
    for (const Term& t : terms) acc[t.e] += t.c;
    double max_mag = 0.0;
    for (const auto& [e, c] : acc) max_mag = std::max(max_mag, std::abs(c));
    SparsePoly p;
    const double cutoff = drop_tolerance * max_mag;
    for (const auto& [e, c] : acc)
      if (std::abs(c) > cutoff) p.terms_.push_back({e, c});
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  std::vector<Exponent> support() const {
    std::vector<Exponent> s;
    s.reserve(terms_.size());
    for (const Term& t : terms_) s.push_back(t.e);
    return s;
  }

  /// Coefficient of x^i y^j, zero if the exponent is not in the support.
  Complex coeff(Exponent e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, Exponent x) { return t.e < x; });
    if (it != terms_.end() && it->e == e) return it->c;
    return {0.0, 0.0};
  }

  double max_coeff_magnitude() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
  }

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  std::vector<Term> terms_;
};

/// m = min over the support of <(i,j),(u,v)>.
inline long long weighted_degree(const SparsePoly& p, Direction d) {
  if (p.is_zero()) throw std::invalid_argument("weighted_degree of zero polynomial");
  if (d.u == 0 && d.v == 0) throw std::invalid_argument("zero direction");
  long long m = 0;
  bool first = true;
  for (const Term& t : p.terms()) {
    const long long w = detail::checked_add(detail::checked_mul(t.e.i, d.u),
                                            detail::checked_mul(t.e.j, d.v));
    if (first || w < m) m = w;
    first = false;
  }
  return m;
}

/// Sub-polynomial of the terms attaining weighted_degree(p, d); its Newton
/// polygon is the face (edge or vertex) of p's polygon picked out by d.
inline SparsePoly initial_form(const SparsePoly& p, Direction d) {
  const long long m = weighted_degree(p, d);
  std::vector<Term> kept;
  for (const Term& t : p.terms())
    if (t.e.i * d.u + t.e.j * d.v == m) kept.push_back(t);
  return SparsePoly::from_terms(kept, 0.0);
}

/// Divides out x^a y^b with a = min i, b = min j over the support, so the
/// quotient touches both coordinate axes.  Returns (quotient, (a, b)).
inline std::pair<SparsePoly, Exponent> strip_monomial(const SparsePoly& p) {
  if (p.is_zero()) throw std::invalid_argument("strip_monomial of zero polynomial");
  long long a = p.terms().front().e.i, b = p.terms().front().e.j;
  for (const Term& t : p.terms()) {
    a = std::min(a, t.e.i);
    b = std::min(b, t.e.j);
  }
  std::vector<Term> shifted;
  shifted.reserve(p.term_count());
  for (const Term& t : p.terms()) shifted.push_back({{t.e.i - a, t.e.j - b}, t.c});
  return {SparsePoly::from_terms(shifted, 0.0), Exponent{a, b}};
}

/// Term-by-term evaluation; throws std::domain_error on a zero base with a
/// negative exponent.
inline Complex evaluate(const SparsePoly& p, Complex x, Complex y) {
  Complex acc(0.0, 0.0);
  for (const Term& t : p.terms())
    acc += t.c * detail::ipow(x, t.e.i) * detail::ipow(y, t.e.j);
  return acc;
}

inline SparsePoly multiply(const SparsePoly& p, const SparsePoly& q,
                           double drop_tolerance = SparsePoly::kDropTolerance) {
  std::vector<Term> prod;
  prod.reserve(p.term_count() * q.term_count());
  for (const Term& a : p.terms())
    for (const Term& b : q.terms())
      prod.push_back({{detail::checked_add(a.e.i, b.e.i),
                       detail::checked_add(a.e.j, b.e.j)},
                      a.c * b.c});
  return SparsePoly::from_terms(prod, drop_tolerance);
}

// --- text format -----------------------------------------------------------
//
// A polynomial is a sum of terms: factors are decimal or rational numbers,
// the imaginary unit i, and powers of x and y.  Factors may be joined by '*'
// or juxtaposed, exponents may be negative and parenthesized:
//   2*x*y + 9*x*y^2      5 - 0.25*i*x^2      3/4*x^(-2)*y

namespace detail {

struct PolyParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' ||
                              s[pos] == '\r'))
      ++pos;
  }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool starts_factor(char c) {
    return is_digit(c) || c == '.' || c == 'x' || c == 'y' || c == 'i' || c == 'I';
  }

  double parse_number() {
    double value = 0.0;
    auto res = std::from_chars(s.data() + pos, s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr == s.data() + pos) fail("expected number");
    pos = static_cast<std::size_t>(res.ptr - s.data());
    skip_ws();
    if (peek() == '/') {  // rational literal a/b
      ++pos;
      skip_ws();
      double den = 0.0;
      auto r2 = std::from_chars(s.data() + pos, s.data() + s.size(), den);
      if (r2.ec != std::errc() || r2.ptr == s.data() + pos) fail("expected denominator");
      pos = static_cast<std::size_t>(r2.ptr - s.data());
      if (den == 0.0) fail("zero denominator");
      value /= den;
    }
    return value;
  }

  long long parse_exponent() {
    skip_ws();
    const bool parens = peek() == '(';
    if (parens) {
      ++pos;
      skip_ws();
    }
    long long sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = -1;
      ++pos;
      skip_ws();
    }
    long long value = 0;
    auto res = std::from_chars(s.data() + pos, s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr == s.data() + pos) fail("expected integer exponent");
    pos = static_cast<std::size_t>(res.ptr - s.data());
    if (parens) {
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos;
    }
    return sign * value;
  }

  Term parse_term(int sign) {
    Complex coeff(static_cast<double>(sign), 0.0);
    Exponent e{0, 0};
    bool any = false;
    while (true) {
      skip_ws();
      const char c = peek();
      if (is_digit(c) || c == '.') {
        coeff *= parse_number();
      } else if (c == 'x' || c == 'y') {
        ++pos;
        long long ex = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos;
          ex = parse_exponent();
        }
        (c == 'x' ? e.i : e.j) += ex;
      } else if (c == 'i' || c == 'I') {
        ++pos;
        coeff *= Complex(0.0, 1.0);
      } else {
        fail(any ? "expected factor" : "expected term");
      }
      any = true;
      skip_ws();
      if (peek() == '*') {
        ++pos;
        continue;
      }
      if (starts_factor(peek())) continue;  // juxtaposition, e.g. "9xy^2"
      break;
    }
    return {e, coeff};
  }

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = -1;
      ++pos;
    }
    terms.push_back(parse_term(sign));
    while (true) {
      skip_ws();
      if (pos == s.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos;
      terms.push_back(parse_term(c == '-' ? -1 : 1));
    }
    return terms;
  }
};

inline std::string double_to_string(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses the expression format above.  Duplicate exponents are summed, so a
/// complex coefficient can be written as two terms.  Throws ParseError with
/// the offending position; the zero polynomial is rejected.
inline SparsePoly parse_poly(std::string_view text,
                             double drop_tolerance = SparsePoly::kDropTolerance) {
  detail::PolyParser parser{text};
  SparsePoly p = SparsePoly::from_terms(parser.parse(), drop_tolerance);
  if (p.is_zero()) throw ParseError("polynomial has no nonzero terms", 0);
  return p;
}

/// Inverse of parse_poly up to term order: complex coefficients are emitted
/// as a real and an imaginary term that the parser re-merges.  Numbers use
/// shortest round-trip formatting, so format/parse is exact.
inline std::string format_poly(const SparsePoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  auto monomial = [](Exponent e) {
    std::string m;
    if (e.i != 0) {
      m += "x";
      if (e.i != 1) m += "^" + std::to_string(e.i);
    }
    if (e.j != 0) {
      if (!m.empty()) m += "*";
      m += "y";
      if (e.j != 1) m += "^" + std::to_string(e.j);
    }
    return m;
  };
  auto emit = [&](double value, bool imaginary, const std::string& mono) {
    if (value == 0.0) return;
    const bool neg = std::signbit(value);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const double mag = std::abs(value);
    std::string piece;
    if (mag != 1.0 || (!imaginary && mono.empty()))
      piece = detail::double_to_string(mag);
    if (imaginary) {
      if (!piece.empty()) piece += "*";
      piece += "i";
    }
    if (!mono.empty()) {
      if (!piece.empty()) piece += "*";
      piece += mono;
    }
    out += piece;
  };
  for (const Term& t : p.terms()) {
    const std::string mono = monomial(t.e);
    emit(t.c.real(), false, mono);
    emit(t.c.imag(), true, mono);
  }
  return out;
}

}  // namespace tropfactor
