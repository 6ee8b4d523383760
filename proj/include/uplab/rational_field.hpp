#pragma once

#include <gmpxx.h>

#include <string>

#include "error.hpp"
#include "field_spec.hpp"

namespace uplab {

/// The rationals with GMP arbitrary-precision fractions. Same arithmetic
/// surface as FiniteField so the linear algebra templates accept either.
class RationalField {
 public:
  using Element = mpq_class;

  RationalField() = default;

  FieldSpec spec() const { return FieldSpec::rational(); }
  bool operator==(const RationalField&) const { return true; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  Element from_int(long long v) const { return Element(static_cast<long>(v)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (is_zero(a)) fail(ErrorCode::InvalidInput, "division by zero in Q");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  /// Parses "num/den" or "num"; the result is canonicalized.
  static Element parse(const std::string& text) {
    Element v;
    if (v.set_str(text, 10) != 0) fail(ErrorCode::InvalidInput, "bad rational '" + text + "'");
    if (v.get_den() == 0) fail(ErrorCode::InvalidInput, "zero denominator in '" + text + "'");
    v.canonicalize();
    return v;
  }

  static std::string format(const Element& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
  }
};

}  // namespace uplab
