#pragma once

// Bivariate polynomials in (z, w): the public rational type used for curve
// equations, and an internal variant over a number field that the
// Newton-Puiseux recursion works with.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "curvel2/number_field.hpp"
#include "curvel2/series.hpp"
#include "curvel2/upoly.hpp"

namespace curvel2 {

/// Exponent pair (i, j) of the monomial z^i w^j.
using Exp2 = std::pair<int, int>;

class BivariatePoly {
 public:
  /// Throws InputError for the zero polynomial or negative exponents.
  explicit BivariatePoly(std::map<Exp2, mpq_class> terms);
  /// Text format over the variables z and w.
  static BivariatePoly parse(const std::string& text);

  const std::map<Exp2, mpq_class>& terms() const { return terms_; }
  mpq_class coeff(int i, int j) const;
  int degree_z() const;
  int degree_w() const;
  int total_degree() const;
  /// Lowest total degree of a monomial (the order at the origin).
  int order() const;
  bool vanishes_at_origin() const { return terms_.find({0, 0}) == terms_.end(); }

  /// z <-> w
  BivariatePoly swapped() const;
  /// Squarefree as an element of Q[z, w]: no repeated factor involving w
  /// (gcd with the w-derivative) and a squarefree content in Q[z].
  bool is_squarefree() const;

  std::string to_string() const;

 private:
  std::map<Exp2, mpq_class> terms_;
};

/// Polynomial in (z, w) over a number field; may be zero.
class KPoly2 {
 public:
  explicit KPoly2(FieldPtr field = NumberField::rationals());
  static KPoly2 from_rational(const BivariatePoly& f);

  const FieldPtr& field() const { return field_; }
  const std::map<Exp2, AlgebraicNumber>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  AlgebraicNumber coeff(int i, int j) const;
  void add_term(int i, int j, const AlgebraicNumber& c);

  KPoly2 lifted(const FieldPtr& target) const;
  KPoly2 derivative_w() const;
  int degree_z() const;
  int degree_w() const;
  /// Smallest j with (0, j) in the support, or -1 if z divides the polynomial.
  int order_w_on_axis() const;
  /// Smallest j over the whole support (the power of w dividing the polynomial).
  int min_w_degree() const;
  int order() const;

  /// f(t^s, w(t)) as a truncated series.
  Series substitute(int s, const Series& w) const;
  /// f(z^q, z^m (c + w)) / z^e for the smallest possible e.
  KPoly2 puiseux_transform(int q, int m, const AlgebraicNumber& c) const;
  /// f(z + lambda*w, w)
  KPoly2 sheared(const AlgebraicNumber& lambda) const;
  /// f(z, w + c*z)
  KPoly2 tilted(const AlgebraicNumber& c) const;
  /// f(a + z, b + w)
  KPoly2 translated(const AlgebraicNumber& a, const AlgebraicNumber& b) const;
  /// f(a, w) as a polynomial in w.
  UPoly at_z(const AlgebraicNumber& a) const;
  AlgebraicNumber eval(const AlgebraicNumber& a, const AlgebraicNumber& b) const;
  KPoly2 derivative_z() const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::map<Exp2, AlgebraicNumber> terms_;
};

}  // namespace curvel2
