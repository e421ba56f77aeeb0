#pragma once

// Exact arithmetic in towers of algebraic extensions of the rationals.
//
// A tower is a chain Q = K_0 < K_1 < ... < K_r where K_i = K_{i-1}(a_i) and
// a_i is a root of a monic polynomial irreducible over K_{i-1}. An element of
// K_i is stored as its coefficient vector in the basis 1, a_i, ..., a_i^{d-1}
// over K_{i-1}, always fully reduced, so structural equality is field
// equality.

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace curvel2 {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class AlgebraicNumber {
 public:
  AlgebraicNumber();
  AlgebraicNumber(long v);  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(const mpq_class& q);  // NOLINT(google-explicit-constructor)

  static AlgebraicNumber zero(const FieldPtr& field);
  static AlgebraicNumber one(const FieldPtr& field);
  static AlgebraicNumber rational(const FieldPtr& field, const mpq_class& q);
  /// Builds an element from its coordinates over the parent field.
  static AlgebraicNumber from_coordinates(const FieldPtr& field,
                                          std::vector<AlgebraicNumber> coords);

  const FieldPtr& field() const { return field_; }
  int level() const;

  bool is_zero() const;
  bool is_one() const;
  /// True if the element lies in the prime field Q.
  bool is_rational() const;
  /// Requires is_rational().
  mpq_class to_rational() const;

  /// Coordinates over the parent field (empty at level 0).
  const std::vector<AlgebraicNumber>& coordinates() const { return coords_; }
  const mpq_class& rational_value() const { return q_; }

  /// Embeds this element into `target`, which must be this element's field or
  /// an extension of it.
  AlgebraicNumber lifted(const FieldPtr& target) const;

  AlgebraicNumber operator-() const;
  AlgebraicNumber& operator+=(const AlgebraicNumber& o);
  AlgebraicNumber& operator-=(const AlgebraicNumber& o);
  AlgebraicNumber& operator*=(const AlgebraicNumber& o);
  AlgebraicNumber& operator/=(const AlgebraicNumber& o);
  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }

  AlgebraicNumber inverse() const;
  AlgebraicNumber pow(unsigned long e) const;

  /// Norm down to the parent field (determinant of the multiplication map).
  AlgebraicNumber norm_to_parent() const;

  /// Expression in the tower generators, e.g. "1/2 + 3*a1 - a1^2".
  std::string to_string() const;

 private:
  FieldPtr field_;
  mpq_class q_;                          // level 0
  std::vector<AlgebraicNumber> coords_;  // level > 0: exactly degree() entries

  void normalize_shape();
  friend class NumberField;
};

/// Common field of two elements: the deeper one when the two lie in one
/// tower chain; throws MathError otherwise.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

class NumberField {
 public:
  static const FieldPtr& rationals();

  /// Adjoins a root of `minpoly` (monic, coefficients in `parent`, lowest
  /// degree first). Irreducibility is NOT checked here; use
  /// curvel2::adjoin_root, which verifies it by exact factorization.
  static FieldPtr make_extension(const FieldPtr& parent, std::string name,
                                 std::vector<AlgebraicNumber> minpoly);

  const FieldPtr& parent() const { return parent_; }
  int level() const { return level_; }
  /// Degree over the parent (1 for Q).
  std::size_t degree() const { return minpoly_.empty() ? 1 : minpoly_.size() - 1; }
  std::size_t absolute_degree() const;
  const std::string& generator_name() const { return name_; }
  const std::vector<AlgebraicNumber>& minimal_polynomial() const { return minpoly_; }

  /// True if `other` is this field or one of its subfields in the chain.
  bool contains(const NumberField& other) const;

  AlgebraicNumber generator(const FieldPtr& self) const;

  /// (generator, minimal polynomial) pairs from the bottom of the tower up.
  std::vector<std::pair<std::string, std::string>> tower_description() const;

 private:
  NumberField() = default;
  FieldPtr parent_;
  int level_ = 0;
  std::string name_;
  std::vector<AlgebraicNumber> minpoly_;
};

}  // namespace curvel2
