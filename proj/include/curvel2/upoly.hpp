#pragma once

// Dense univariate polynomials over a number field.

#include <string>
#include <utility>
#include <vector>

#include "curvel2/number_field.hpp"

namespace curvel2 {

class UPoly {
 public:
  explicit UPoly(FieldPtr field = NumberField::rationals());
  UPoly(FieldPtr field, std::vector<AlgebraicNumber> coeffs);
  /// Rational coefficients, lowest degree first.
  static UPoly from_rationals(const std::vector<mpq_class>& coeffs);
  static UPoly constant(const FieldPtr& field, const AlgebraicNumber& c);
  static UPoly monomial(const FieldPtr& field, const AlgebraicNumber& c, std::size_t k);
  static UPoly x(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<AlgebraicNumber>& coeffs() const { return c_; }
  AlgebraicNumber coeff(std::size_t i) const;
  const AlgebraicNumber& leading() const;

  UPoly lifted(const FieldPtr& target) const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const AlgebraicNumber& c);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend UPoly operator*(UPoly a, const AlgebraicNumber& c) { return a *= c; }
  friend bool operator==(const UPoly& a, const UPoly& b);
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  /// Euclidean division: returns (quotient, remainder).
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  UPoly operator%(const UPoly& b) const { return divmod(*this, b).second; }
  /// Exact division; throws MathError if the remainder is nonzero.
  UPoly exact_div(const UPoly& b) const;

  UPoly monic() const;
  UPoly derivative() const;
  AlgebraicNumber eval(const AlgebraicNumber& a) const;
  /// p(x + a)
  UPoly shifted(const AlgebraicNumber& a) const;
  /// p(x^q)
  UPoly inflated(std::size_t q) const;

  /// Monic gcd (zero if both inputs are zero).
  static UPoly gcd(const UPoly& a, const UPoly& b);
  static AlgebraicNumber resultant(const UPoly& a, const UPoly& b);
  bool is_squarefree() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  FieldPtr field_;
  std::vector<AlgebraicNumber> c_;
  void trim();
};

/// Interpolates the polynomial of degree < nodes.size() through
/// (nodes[i], values[i]); nodes must be distinct.
UPoly interpolate(const FieldPtr& field, const std::vector<AlgebraicNumber>& nodes,
                  const std::vector<AlgebraicNumber>& values);

}  // namespace curvel2
