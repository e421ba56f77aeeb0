#include "curvel2/number_field.hpp"

#include "curvel2/errors.hpp"

namespace curvel2 {

namespace {

using Vec = std::vector<AlgebraicNumber>;
using Matrix = std::vector<Vec>;

// Multiplication-by-a matrix over the parent field; column j holds the
// coordinates of a * gen^j.
Matrix multiplication_matrix(const AlgebraicNumber& a) {
  const FieldPtr& f = a.field();
  const std::size_t d = f->degree();
  const AlgebraicNumber gen = f->generator(f);
  Matrix m(d, Vec(d));
  AlgebraicNumber col = a;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coordinates()[i];
    if (j + 1 < d) col *= gen;
  }
  return m;
}

// Row-reduces m (square, over one field); returns the determinant and, if rhs
// is non-null, solves m x = rhs in place.
AlgebraicNumber eliminate(Matrix m, Vec* rhs, const FieldPtr& field) {
  const std::size_t n = m.size();
  AlgebraicNumber det = AlgebraicNumber::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return AlgebraicNumber::zero(field);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      if (rhs) std::swap((*rhs)[piv], (*rhs)[col]);
      det = -det;
    }
    det *= m[col][col];
    const AlgebraicNumber inv = m[col][col].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const AlgebraicNumber factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
      if (rhs) (*rhs)[r] -= factor * (*rhs)[col];
    }
  }
  if (rhs) {
    for (std::size_t i = 0; i < n; ++i) (*rhs)[i] /= m[i][i];
  }
  return det;
}

bool needs_parens(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField

const FieldPtr& NumberField::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->name_ = "Q";
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr NumberField::make_extension(const FieldPtr& parent, std::string name, Vec minpoly) {
  if (!parent) throw MathError("make_extension: null parent field");
  if (minpoly.size() < 3) throw MathError("make_extension: minimal polynomial must have degree >= 2");
  for (auto& c : minpoly) c = c.lifted(parent);
  if (!minpoly.back().is_one()) throw MathError("make_extension: minimal polynomial must be monic");
  auto f = std::shared_ptr<NumberField>(new NumberField());
  f->parent_ = parent;
  f->level_ = parent->level_ + 1;
  f->name_ = std::move(name);
  f->minpoly_ = std::move(minpoly);
  return f;
}

std::size_t NumberField::absolute_degree() const {
  return level_ == 0 ? 1 : degree() * parent_->absolute_degree();
}

bool NumberField::contains(const NumberField& other) const {
  for (const NumberField* f = this; f != nullptr; f = f->parent_.get()) {
    if (f == &other) return true;
  }
  return false;
}

AlgebraicNumber NumberField::generator(const FieldPtr& self) const {
  if (self.get() != this) throw MathError("generator: field pointer mismatch");
  if (level_ == 0) return AlgebraicNumber(1);
  AlgebraicNumber g = AlgebraicNumber::zero(self);
  g.coords_[1] = AlgebraicNumber::one(parent_);
  return g;
}

std::vector<std::pair<std::string, std::string>> NumberField::tower_description() const {
  std::vector<std::pair<std::string, std::string>> out;
  if (level_ == 0) return out;
  out = parent_->tower_description();
  std::string poly;
  for (std::size_t k = minpoly_.size(); k-- > 0;) {
    const AlgebraicNumber& c = minpoly_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool neg = c.is_rational() && c.to_rational() < 0;
    if (neg) cs = cs.substr(1);
    std::string mon = k == 0 ? "" : (k == 1 ? name_ : name_ + "^" + std::to_string(k));
    std::string term;
    if (k == 0) {
      term = cs;
    } else if (cs == "1") {
      term = mon;
    } else {
      term = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + mon;
    }
    if (poly.empty()) {
      poly = neg ? "-" + term : term;
    } else {
      poly += neg ? " - " + term : " + " + term;
    }
  }
  out.emplace_back(name_, poly);
  return out;
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return a;
  if (a->contains(*b)) return a;
  if (b->contains(*a)) return b;
  throw MathError("elements live in incompatible extension towers");
}

// ---------------------------------------------------------------------------
// AlgebraicNumber

AlgebraicNumber::AlgebraicNumber() : field_(NumberField::rationals()), q_(0) {}
AlgebraicNumber::AlgebraicNumber(long v) : field_(NumberField::rationals()), q_(v) {}
AlgebraicNumber::AlgebraicNumber(const mpq_class& q) : field_(NumberField::rationals()), q_(q) {
  q_.canonicalize();
}

AlgebraicNumber AlgebraicNumber::zero(const FieldPtr& field) {
  AlgebraicNumber a;
  a.field_ = field;
  if (field->level() > 0) a.coords_.assign(field->degree(), zero(field->parent()));
  return a;
}

AlgebraicNumber AlgebraicNumber::one(const FieldPtr& field) { return rational(field, 1); }

AlgebraicNumber AlgebraicNumber::rational(const FieldPtr& field, const mpq_class& q) {
  return AlgebraicNumber(q).lifted(field);
}

AlgebraicNumber AlgebraicNumber::from_coordinates(const FieldPtr& field, Vec coords) {
  if (field->level() == 0) {
    if (coords.size() != 1) throw MathError("from_coordinates: Q expects one coordinate");
    return coords[0].lifted(field);
  }
  if (coords.size() > field->degree()) throw MathError("from_coordinates: too many coordinates");
  AlgebraicNumber a = zero(field);
  for (std::size_t i = 0; i < coords.size(); ++i) a.coords_[i] = coords[i].lifted(field->parent());
  return a;
}

int AlgebraicNumber::level() const { return field_->level(); }

void AlgebraicNumber::normalize_shape() {
  if (field_->level() > 0 && coords_.size() != field_->degree()) {
    coords_.resize(field_->degree(), zero(field_->parent()));
  }
}

bool AlgebraicNumber::is_zero() const {
  if (field_->level() == 0) return sgn(q_) == 0;
  for (const auto& c : coords_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool AlgebraicNumber::is_one() const {
  if (field_->level() == 0) return q_ == 1;
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (!coords_[i].is_zero()) return false;
  }
  return coords_[0].is_one();
}

bool AlgebraicNumber::is_rational() const {
  if (field_->level() == 0) return true;
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (!coords_[i].is_zero()) return false;
  }
  return coords_[0].is_rational();
}

mpq_class AlgebraicNumber::to_rational() const {
  if (!is_rational()) throw MathError("to_rational: element is not rational");
  const AlgebraicNumber* a = this;
  while (a->field_->level() > 0) a = &a->coords_[0];
  return a->q_;
}

AlgebraicNumber AlgebraicNumber::lifted(const FieldPtr& target) const {
  if (field_ == target) return *this;
  if (!target->contains(*field_)) {
    throw MathError("cannot embed element of " + field_->generator_name() + "-level field into " +
                    target->generator_name());
  }
  AlgebraicNumber out = zero(target);
  out.coords_[0] = lifted(target->parent());
  return out;
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  AlgebraicNumber r = *this;
  if (field_->level() == 0) {
    r.q_ = -q_;
  } else {
    for (auto& c : r.coords_) c = -c;
  }
  return r;
}

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& o) {
  if (field_ != o.field_) {
    FieldPtr f = common_field(field_, o.field_);
    *this = lifted(f);
    return *this += o.lifted(f);
  }
  if (field_->level() == 0) {
    q_ += o.q_;
  } else {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  }
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& o) { return *this += -o; }

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& o) {
  if (field_ != o.field_) {
    FieldPtr f = common_field(field_, o.field_);
    *this = lifted(f);
    return *this *= o.lifted(f);
  }
  if (field_->level() == 0) {
    q_ *= o.q_;
    return *this;
  }
  const std::size_t d = field_->degree();
  const FieldPtr& parent = field_->parent();
  Vec prod(2 * d - 1, zero(parent));
  for (std::size_t i = 0; i < d; ++i) {
    if (coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (o.coords_[j].is_zero()) continue;
      prod[i + j] += coords_[i] * o.coords_[j];
    }
  }
  const Vec& m = field_->minimal_polynomial();
  for (std::size_t k = prod.size(); k-- > d;) {
    if (prod[k].is_zero()) continue;
    const AlgebraicNumber lead = prod[k];
    for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= lead * m[i];
    prod[k] = zero(parent);
  }
  prod.resize(d);
  coords_ = std::move(prod);
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator/=(const AlgebraicNumber& o) { return *this *= o.inverse(); }

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.field_ != b.field_) {
    FieldPtr f = common_field(a.field_, b.field_);
    return a.lifted(f) == b.lifted(f);
  }
  if (a.field_->level() == 0) return a.q_ == b.q_;
  return a.coords_ == b.coords_;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw MathError("division by zero in algebraic number field");
  if (field_->level() == 0) {
    AlgebraicNumber r;
    r.q_ = 1 / q_;
    r.q_.canonicalize();
    return r;
  }
  const FieldPtr& parent = field_->parent();
  Vec rhs(field_->degree(), zero(parent));
  rhs[0] = one(parent);
  eliminate(multiplication_matrix(*this), &rhs, parent);
  AlgebraicNumber r = zero(field_);
  r.coords_ = std::move(rhs);
  return r;
}

AlgebraicNumber AlgebraicNumber::pow(unsigned long e) const {
  AlgebraicNumber result = one(field_);
  AlgebraicNumber base = *this;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

AlgebraicNumber AlgebraicNumber::norm_to_parent() const {
  if (field_->level() == 0) return *this;
  return eliminate(multiplication_matrix(*this), nullptr, field_->parent());
}

std::string AlgebraicNumber::to_string() const {
  if (field_->level() == 0) return q_.get_str();
  const std::string& name = field_->generator_name();
  std::string out;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const AlgebraicNumber& c = coords_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool neg = c.is_rational() && c.to_rational() < 0;
    if (neg) cs = cs.substr(1);
    std::string mon = k == 0 ? "" : (k == 1 ? name : name + "^" + std::to_string(k));
    std::string term;
    if (k == 0) {
      term = cs;
    } else if (cs == "1") {
      term = mon;
    } else {
      term = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + mon;
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " + term : " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace curvel2
