#pragma once

// Truncated power series in one variable t over a number field. A series is
// known modulo t^precision; coefficients at or beyond the precision are not
// stored. Arithmetic tracks the precision that is actually determined by the
// inputs.

#include <string>
#include <vector>

#include "curvel2/number_field.hpp"

namespace curvel2 {

class Series {
 public:
  /// Effectively exact series (polynomials) use this precision.
  static constexpr int kExact = 1 << 28;

  explicit Series(FieldPtr field = NumberField::rationals(), int precision = kExact);
  Series(FieldPtr field, std::vector<AlgebraicNumber> coeffs, int precision);
  static Series monomial(const FieldPtr& field, const AlgebraicNumber& c, int k, int precision = kExact);

  const FieldPtr& field() const { return field_; }
  int precision() const { return prec_; }
  AlgebraicNumber coeff(int k) const;
  /// Index of the last stored coefficient + 1.
  int stored() const { return static_cast<int>(c_.size()); }
  const std::vector<AlgebraicNumber>& coeffs() const { return c_; }

  /// First index with a nonzero coefficient, or precision() when the series
  /// vanishes to its precision.
  int order() const;
  bool is_zero_to_precision() const { return order() >= prec_; }

  Series lifted(const FieldPtr& target) const;
  Series truncated(int precision) const;
  /// Multiplies by t^k (k >= 0).
  Series shifted(int k) const;
  /// Divides by t^k; the first k coefficients must vanish.
  Series unshifted(int k) const;
  /// Inverse of a series with nonzero constant term.
  Series inverse() const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const AlgebraicNumber& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const AlgebraicNumber& c) { return a *= c; }
  friend Series operator*(const Series& a, const Series& b);

  /// Truncation-aware quotient a/b (b need not be a unit; ord b <= ord a).
  static Series divide(const Series& a, const Series& b);

  std::string to_string(const std::string& var = "t") const;

 private:
  FieldPtr field_;
  std::vector<AlgebraicNumber> c_;
  int prec_;
  void trim();
};

}  // namespace curvel2
