#include "curvel2/upoly.hpp"

#include "curvel2/errors.hpp"

namespace curvel2 {

UPoly::UPoly(FieldPtr field) : field_(std::move(field)) {}

UPoly::UPoly(FieldPtr field, std::vector<AlgebraicNumber> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  for (auto& c : c_) c = c.lifted(field_);
  trim();
}

UPoly UPoly::from_rationals(const std::vector<mpq_class>& coeffs) {
  std::vector<AlgebraicNumber> c;
  c.reserve(coeffs.size());
  for (const auto& q : coeffs) c.emplace_back(q);
  return UPoly(NumberField::rationals(), std::move(c));
}

UPoly UPoly::constant(const FieldPtr& field, const AlgebraicNumber& c) { return UPoly(field, {c}); }

UPoly UPoly::monomial(const FieldPtr& field, const AlgebraicNumber& c, std::size_t k) {
  std::vector<AlgebraicNumber> v(k + 1, AlgebraicNumber::zero(field));
  v[k] = c;
  return UPoly(field, std::move(v));
}

UPoly UPoly::x(const FieldPtr& field) { return monomial(field, AlgebraicNumber::one(field), 1); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AlgebraicNumber UPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : AlgebraicNumber::zero(field_);
}

const AlgebraicNumber& UPoly::leading() const {
  if (c_.empty()) throw MathError("leading coefficient of the zero polynomial");
  return c_.back();
}

UPoly UPoly::lifted(const FieldPtr& target) const {
  if (target == field_) return *this;
  return UPoly(target, c_);
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.field_ != field_) {
    FieldPtr f = common_field(field_, o.field_);
    *this = lifted(f);
    return *this += o.lifted(f);
  }
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), AlgebraicNumber::zero(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) { return *this += -o; }

UPoly& UPoly::operator*=(const UPoly& o) {
  if (o.field_ != field_) {
    FieldPtr f = common_field(field_, o.field_);
    *this = lifted(f);
    return *this *= o.lifted(f);
  }
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<AlgebraicNumber> r(c_.size() + o.c_.size() - 1, AlgebraicNumber::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r[i + j] += c_[i] * o.c_[j];
    }
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const AlgebraicNumber& c) {
  if (c.field() != field_) {
    FieldPtr f = common_field(field_, c.field());
    *this = lifted(f);
  }
  for (auto& a : c_) a *= c;
  trim();
  return *this;
}

bool operator==(const UPoly& a, const UPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] != b.c_[i]) return false;
  }
  return true;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  FieldPtr f = common_field(a.field_, b.field_);
  UPoly r = a.lifted(f);
  UPoly bb = b.lifted(f);
  if (r.degree() < bb.degree()) return {UPoly(f), r};
  std::vector<AlgebraicNumber> q(r.c_.size() - bb.c_.size() + 1, AlgebraicNumber::zero(f));
  const AlgebraicNumber inv = bb.leading().inverse();
  const std::size_t db = bb.c_.size() - 1;
  for (std::size_t k = r.c_.size(); k-- > db;) {
    if (r.c_[k].is_zero()) continue;
    AlgebraicNumber t = r.c_[k] * inv;
    q[k - db] = t;
    for (std::size_t i = 0; i <= db; ++i) r.c_[k - db + i] -= t * bb.c_[i];
  }
  r.trim();
  return {UPoly(f, std::move(q)), r};
}

UPoly UPoly::exact_div(const UPoly& b) const {
  auto [q, r] = divmod(*this, b);
  if (!r.is_zero()) throw MathError("inexact polynomial division");
  return q;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly r = *this;
  r *= leading().inverse();
  return r;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly(field_);
  std::vector<AlgebraicNumber> d;
  d.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * AlgebraicNumber(static_cast<long>(i)));
  return UPoly(field_, std::move(d));
}

AlgebraicNumber UPoly::eval(const AlgebraicNumber& a) const {
  FieldPtr f = common_field(field_, a.field());
  AlgebraicNumber acc = AlgebraicNumber::zero(f);
  for (std::size_t k = c_.size(); k-- > 0;) {
    acc *= a;
    acc += c_[k];
  }
  return acc;
}

UPoly UPoly::shifted(const AlgebraicNumber& a) const {
  FieldPtr f = common_field(field_, a.field());
  UPoly lin(f, {a, AlgebraicNumber::one(f)});
  UPoly acc(f);
  for (std::size_t k = c_.size(); k-- > 0;) {
    acc *= lin;
    acc += UPoly::constant(f, c_[k]);
  }
  return acc;
}

UPoly UPoly::inflated(std::size_t q) const {
  if (q == 0) throw MathError("inflated: q must be positive");
  if (c_.empty()) return *this;
  std::vector<AlgebraicNumber> r((c_.size() - 1) * q + 1, AlgebraicNumber::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * q] = c_[i];
  return UPoly(field_, std::move(r));
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
  FieldPtr f = common_field(a.field_, b.field_);
  UPoly x = a.lifted(f);
  UPoly y = b.lifted(f);
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

AlgebraicNumber UPoly::resultant(const UPoly& a, const UPoly& b) {
  FieldPtr f = common_field(a.field_, b.field_);
  if (a.is_zero() || b.is_zero()) return AlgebraicNumber::zero(f);
  UPoly x = a.lifted(f);
  UPoly y = b.lifted(f);
  AlgebraicNumber acc = AlgebraicNumber::one(f);
  while (true) {
    const int dx = x.degree();
    const int dy = y.degree();
    if (dy == 0) return acc * y.leading().pow(static_cast<unsigned long>(dx));
    if (dx == 0) return acc * x.leading().pow(static_cast<unsigned long>(dy));
    UPoly r = x % y;
    if (r.is_zero()) return AlgebraicNumber::zero(f);
    // res(x, y) = (-1)^{dx dy} lc(y)^{dx - dr} res(y, r)
    if ((dx % 2 == 1) && (dy % 2 == 1)) acc = -acc;
    acc *= y.leading().pow(static_cast<unsigned long>(dx - r.degree()));
    x = std::move(y);
    y = std::move(r);
  }
}

bool UPoly::is_squarefree() const {
  if (degree() <= 0) return true;
  return gcd(*this, derivative()).degree() == 0;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const AlgebraicNumber& c = c_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool neg = c.is_rational() && c.to_rational() < 0;
    if (neg) cs = cs.substr(1);
    bool compound = false;
    for (std::size_t i = 1; i < cs.size(); ++i) compound |= (cs[i] == '+' || cs[i] == '-');
    std::string mon = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string term;
    if (k == 0) {
      term = compound ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = mon;
    } else {
      term = (compound ? "(" + cs + ")" : cs) + "*" + mon;
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " + term : " + " + term;
    }
  }
  return out;
}

UPoly interpolate(const FieldPtr& field, const std::vector<AlgebraicNumber>& nodes,
                  const std::vector<AlgebraicNumber>& values) {
  const std::size_t n = nodes.size();
  if (values.size() != n) throw MathError("interpolate: size mismatch");
  // Newton divided differences.
  std::vector<AlgebraicNumber> dd(values.begin(), values.end());
  for (auto& v : dd) v = v.lifted(field);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
      if (i == j) break;
    }
  }
  UPoly result(field);
  for (std::size_t k = n; k-- > 0;) {
    result *= UPoly(field, {-nodes[k], AlgebraicNumber::one(field)});
    result += UPoly::constant(field, dd[k]);
  }
  return result;
}

}  // namespace curvel2
