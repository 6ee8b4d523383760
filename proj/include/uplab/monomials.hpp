#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace uplab {

/// Exponent triple (a, b, c) of x^a y^b z^c.
using Exponent = std::array<unsigned, 3>;

inline std::size_t monomial_count(unsigned degree) { return (degree + 1) * (degree + 2) / 2; }

/// Degree-s monomials in graded lex order with x > y > z:
/// x^s, x^(s-1) y, x^(s-1) z, x^(s-2) y^2, ...
inline std::vector<Exponent> monomials(unsigned degree) {
  std::vector<Exponent> out;
  out.reserve(monomial_count(degree));
  for (unsigned a = degree + 1; a-- > 0;) {
    for (unsigned b = degree - a + 1; b-- > 0;) out.push_back({a, b, degree - a - b});
  }
  return out;
}

/// Position of an exponent in monomials(a+b+c).
inline std::size_t monomial_index(const Exponent& e) {
  const unsigned s = e[0] + e[1] + e[2];
  const unsigned k = s - e[0];  // rows before: exponents with larger a
  return k * (k + 1) / 2 + (k - e[1]);
}

inline std::size_t binomial2(long long n) { return n < 2 ? 0 : static_cast<std::size_t>(n * (n - 1) / 2); }

/// C(d+2, 2): dimension of degree-d ternary forms.
inline std::size_t forms_dimension(long long d) { return d < 0 ? 0 : binomial2(d + 2); }

}  // namespace uplab
