#include "curvel2/series.hpp"

#include <algorithm>

#include "curvel2/errors.hpp"

namespace curvel2 {

Series::Series(FieldPtr field, int precision) : field_(std::move(field)), prec_(precision) {}

Series::Series(FieldPtr field, std::vector<AlgebraicNumber> coeffs, int precision)
    : field_(std::move(field)), c_(std::move(coeffs)), prec_(precision) {
  for (auto& c : c_) c = c.lifted(field_);
  trim();
}

Series Series::monomial(const FieldPtr& field, const AlgebraicNumber& c, int k, int precision) {
  std::vector<AlgebraicNumber> v(static_cast<std::size_t>(k) + 1, AlgebraicNumber::zero(field));
  v.back() = c;
  return Series(field, std::move(v), precision);
}

void Series::trim() {
  if (static_cast<int>(c_.size()) > prec_) c_.resize(static_cast<std::size_t>(std::max(prec_, 0)));
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AlgebraicNumber Series::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return AlgebraicNumber::zero(field_);
  return c_[static_cast<std::size_t>(k)];
}

int Series::order() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return static_cast<int>(i);
  }
  return prec_;
}

Series Series::lifted(const FieldPtr& target) const {
  if (target == field_) return *this;
  return Series(target, c_, prec_);
}

Series Series::truncated(int precision) const {
  Series r = *this;
  r.prec_ = std::min(prec_, precision);
  r.trim();
  return r;
}

Series Series::shifted(int k) const {
  Series r(field_, prec_ >= kExact ? kExact : prec_ + k);
  if (c_.empty()) return r;
  r.c_.assign(static_cast<std::size_t>(k), AlgebraicNumber::zero(field_));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Series Series::unshifted(int k) const {
  if (order() < k) throw MathError("series is not divisible by t^" + std::to_string(k));
  Series r(field_, prec_ >= kExact ? kExact : prec_ - k);
  if (static_cast<int>(c_.size()) > k) r.c_.assign(c_.begin() + k, c_.end());
  return r;
}

Series Series::inverse() const {
  if (coeff(0).is_zero()) throw MathError("series inverse: constant term vanishes");
  if (prec_ >= kExact && c_.size() > 1) throw MathError("series inverse needs a finite precision");
  const int n = prec_ >= kExact ? 1 : prec_;
  if (prec_ >= kExact) return Series(field_, {c_[0].inverse()}, kExact);
  std::vector<AlgebraicNumber> r(static_cast<std::size_t>(n), AlgebraicNumber::zero(field_));
  const AlgebraicNumber inv0 = c_[0].inverse();
  r[0] = inv0;
  for (int k = 1; k < n; ++k) {
    AlgebraicNumber acc = AlgebraicNumber::zero(field_);
    for (int i = 1; i <= k && i < static_cast<int>(c_.size()); ++i) acc += c_[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(k - i)];
    r[static_cast<std::size_t>(k)] = -acc * inv0;
  }
  return Series(field_, std::move(r), n);
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Series& Series::operator+=(const Series& o) {
  if (o.field_ != field_) {
    FieldPtr f = common_field(field_, o.field_);
    *this = lifted(f);
    return *this += o.lifted(f);
  }
  prec_ = std::min(prec_, o.prec_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), AlgebraicNumber::zero(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series& Series::operator*=(const AlgebraicNumber& c) {
  if (c.field() != field_) *this = lifted(common_field(field_, c.field()));
  for (auto& a : c_) a *= c;
  trim();
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  if (a.field_ != b.field_) {
    FieldPtr f = common_field(a.field_, b.field_);
    return a.lifted(f) * b.lifted(f);
  }
  const int va = a.order();
  const int vb = b.order();
  long long pa = static_cast<long long>(a.prec_) + vb;
  long long pb = static_cast<long long>(b.prec_) + va;
  int prec = static_cast<int>(std::min<long long>({pa, pb, Series::kExact}));
  Series r(a.field_, prec);
  if (a.c_.empty() || b.c_.empty()) return r;
  std::size_t len = std::min<std::size_t>(a.c_.size() + b.c_.size() - 1, static_cast<std::size_t>(prec));
  r.c_.assign(len, AlgebraicNumber::zero(a.field_));
  for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

Series Series::divide(const Series& a, const Series& b) {
  const int vb = b.order();
  if (vb >= b.prec_) throw TruncationError("division by a series that vanishes to its precision");
  Series bu = b.unshifted(vb);
  Series au = a.unshifted(vb);
  // Precision of the quotient is limited by both operands.
  int p = std::min(au.precision(), bu.precision());
  if (p >= kExact) p = au.stored() + bu.stored() + 1;  // both exact: any finite precision is honest
  Series inv = bu.truncated(p).inverse();
  return (au * inv).truncated(p);
}

std::string Series::to_string(const std::string& var) const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    std::string cs = c_[k].to_string();
    bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
    if (neg) cs = cs.substr(1);
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    if (compound) cs = "(" + cs + ")";
    std::string mon = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string term;
    if (mon.empty()) {
      term = cs;
    } else if (cs == "1") {
      term = mon;
    } else {
      term = cs + "*" + mon;
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " + term : " + " + term;
    }
  }
  if (out.empty()) out = "0";
  if (prec_ < kExact) out += " + O(" + var + "^" + std::to_string(prec_) + ")";
  return out;
}

}  // namespace curvel2
