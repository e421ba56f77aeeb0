#include "curvel2/bipoly.hpp"

#include <algorithm>
#include <climits>

#include "curvel2/errors.hpp"
#include "curvel2/poly_parse.hpp"
#include "curvel2/upoly.hpp"

namespace curvel2 {

namespace {

// (a + b)^n coefficients.
std::vector<mpz_class> binomials(int n) {
  std::vector<mpz_class> row(static_cast<std::size_t>(n) + 1, 1);
  for (int k = 1; k < n; ++k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    row[static_cast<std::size_t>(k)] = b;
  }
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------

BivariatePoly::BivariatePoly(std::map<Exp2, mpq_class> terms) {
  for (auto& [e, c] : terms) {
    if (e.first < 0 || e.second < 0) throw InputError("negative exponent in polynomial");
    if (c != 0) terms_.emplace(e, c);
  }
  if (terms_.empty()) throw InputError("the zero polynomial is not a curve equation");
}

BivariatePoly BivariatePoly::parse(const std::string& text) {
  SparsePoly p = parse_polynomial(text, {"z", "w"});
  std::map<Exp2, mpq_class> t;
  for (const auto& [e, c] : p) t[{e[0], e[1]}] = c;
  return BivariatePoly(std::move(t));
}

mpq_class BivariatePoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int BivariatePoly::degree_z() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BivariatePoly::degree_w() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

int BivariatePoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

int BivariatePoly::order() const {
  int d = INT_MAX;
  for (const auto& [e, c] : terms_) d = std::min(d, e.first + e.second);
  return d;
}

BivariatePoly BivariatePoly::swapped() const {
  std::map<Exp2, mpq_class> t;
  for (const auto& [e, c] : terms_) t[{e.second, e.first}] = c;
  return BivariatePoly(std::move(t));
}

bool BivariatePoly::is_squarefree() const {
  const FieldPtr& q = NumberField::rationals();
  const int n = degree_w();
  // Content in Q[z]: gcd of the coefficients of the powers of w.
  std::vector<UPoly> rows(static_cast<std::size_t>(n) + 1, UPoly(q));
  for (const auto& [e, c] : terms_) {
    rows[static_cast<std::size_t>(e.second)] += UPoly::monomial(q, AlgebraicNumber(c), static_cast<std::size_t>(e.first));
  }
  UPoly content(q);
  for (const auto& r : rows) content = UPoly::gcd(content, r);
  if (!content.is_squarefree()) return false;
  if (n == 0) return true;
  // Res_w(f, f_w) is a polynomial in z of degree <= (2n - 1) * deg_z; it
  // vanishes identically iff f has a repeated factor of positive w-degree.
  // Sample it at points where the leading coefficient does not vanish.
  const int bound = (2 * n - 1) * degree_z();
  int good = 0;
  for (long z0 = 0; good <= bound; ++z0) {
    const AlgebraicNumber zz(z0);
    std::vector<AlgebraicNumber> coeffs;
    for (const auto& r : rows) coeffs.push_back(r.eval(zz));
    if (coeffs.back().is_zero()) continue;
    ++good;
    UPoly fz(q, coeffs);
    if (!UPoly::resultant(fz, fz.derivative()).is_zero()) return true;
  }
  return false;
}

std::string BivariatePoly::to_string() const {
  SparsePoly p;
  for (const auto& [e, c] : terms_) p[{e.first, e.second}] = c;
  return format_polynomial(p, {"z", "w"});
}

// ---------------------------------------------------------------------------

KPoly2::KPoly2(FieldPtr field) : field_(std::move(field)) {}

KPoly2 KPoly2::from_rational(const BivariatePoly& f) {
  KPoly2 r(NumberField::rationals());
  for (const auto& [e, c] : f.terms()) r.add_term(e.first, e.second, AlgebraicNumber(c));
  return r;
}

AlgebraicNumber KPoly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? AlgebraicNumber::zero(field_) : it->second;
}

void KPoly2::add_term(int i, int j, const AlgebraicNumber& c) {
  if (c.is_zero()) return;
  if (c.field() != field_) {
    FieldPtr f = common_field(field_, c.field());
    if (f != field_) *this = lifted(f);
  }
  auto it = terms_.find({i, j});
  if (it == terms_.end()) {
    terms_.emplace(Exp2{i, j}, c.lifted(field_));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

KPoly2 KPoly2::lifted(const FieldPtr& target) const {
  if (target == field_) return *this;
  KPoly2 r(target);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.lifted(target));
  return r;
}

KPoly2 KPoly2::derivative_w() const {
  KPoly2 r(field_);
  for (const auto& [e, c] : terms_) {
    if (e.second > 0) r.add_term(e.first, e.second - 1, c * AlgebraicNumber(static_cast<long>(e.second)));
  }
  return r;
}

int KPoly2::degree_z() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int KPoly2::degree_w() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

int KPoly2::order_w_on_axis() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    if (e.first == 0 && (best < 0 || e.second < best)) best = e.second;
  }
  return best;
}

int KPoly2::min_w_degree() const {
  int best = INT_MAX;
  for (const auto& [e, c] : terms_) best = std::min(best, e.second);
  return best;
}

int KPoly2::order() const {
  int d = INT_MAX;
  for (const auto& [e, c] : terms_) d = std::min(d, e.first + e.second);
  return d;
}

Series KPoly2::substitute(int s, const Series& w) const {
  FieldPtr f = common_field(field_, w.field());
  const int n = degree_w();
  std::vector<Series> powers;
  powers.emplace_back(Series::monomial(f, AlgebraicNumber::one(f), 0));
  for (int j = 1; j <= n; ++j) powers.push_back(powers.back() * w.lifted(f));
  Series acc(f);
  for (const auto& [e, c] : terms_) {
    acc += (powers[static_cast<std::size_t>(e.second)] * c).shifted(s * e.first);
  }
  return acc;
}

KPoly2 KPoly2::puiseux_transform(int q, int m, const AlgebraicNumber& c) const {
  FieldPtr f = common_field(field_, c.field());
  const AlgebraicNumber cc = c.lifted(f);
  int e_min = INT_MAX;
  for (const auto& [e, v] : terms_) e_min = std::min(e_min, q * e.first + m * e.second);
  KPoly2 r(f);
  std::vector<AlgebraicNumber> cpow = {AlgebraicNumber::one(f)};
  for (const auto& [e, v] : terms_) {
    const int j = e.second;
    while (static_cast<int>(cpow.size()) <= j) cpow.push_back(cpow.back() * cc);
    const int zexp = q * e.first + m * j - e_min;
    const auto bin = binomials(j);
    // (c + w)^j = sum_k binom(j,k) c^{j-k} w^k
    for (int k = 0; k <= j; ++k) {
      AlgebraicNumber coef = v.lifted(f) * cpow[static_cast<std::size_t>(j - k)] * AlgebraicNumber(mpq_class(bin[static_cast<std::size_t>(k)]));
      r.add_term(zexp, k, coef);
    }
  }
  return r;
}

KPoly2 KPoly2::sheared(const AlgebraicNumber& lambda) const {
  FieldPtr f = common_field(field_, lambda.field());
  KPoly2 r(f);
  for (const auto& [e, v] : terms_) {
    // (z + lambda w)^i w^j
    const auto bin = binomials(e.first);
    AlgebraicNumber lp = AlgebraicNumber::one(f);
    for (int k = 0; k <= e.first; ++k) {
      r.add_term(e.first - k, e.second + k, v * lp * AlgebraicNumber(mpq_class(bin[static_cast<std::size_t>(k)])));
      lp *= lambda;
    }
  }
  return r;
}

KPoly2 KPoly2::tilted(const AlgebraicNumber& c) const {
  FieldPtr f = common_field(field_, c.field());
  KPoly2 r(f);
  for (const auto& [e, v] : terms_) {
    // z^i (w + c z)^j
    const auto bin = binomials(e.second);
    AlgebraicNumber cp = AlgebraicNumber::one(f);
    for (int k = 0; k <= e.second; ++k) {
      r.add_term(e.first + k, e.second - k, v * cp * AlgebraicNumber(mpq_class(bin[static_cast<std::size_t>(k)])));
      cp *= c;
    }
  }
  return r;
}

KPoly2 KPoly2::translated(const AlgebraicNumber& a, const AlgebraicNumber& b) const {
  FieldPtr f = common_field(common_field(field_, a.field()), b.field());
  // rows grouped by z-degree, each shifted as a univariate polynomial in w
  KPoly2 r(f);
  std::map<int, std::vector<AlgebraicNumber>> by_i;
  for (const auto& [e, v] : terms_) {
    auto& row = by_i[e.first];
    if (static_cast<int>(row.size()) <= e.second) row.resize(static_cast<std::size_t>(e.second) + 1, AlgebraicNumber::zero(f));
    row[static_cast<std::size_t>(e.second)] = v.lifted(f);
  }
  for (const auto& [i, row] : by_i) {
    const UPoly wpart = UPoly(f, row).shifted(b);
    const UPoly zpart = UPoly::monomial(f, AlgebraicNumber::one(f), static_cast<std::size_t>(i)).shifted(a);
    for (std::size_t p = 0; p < zpart.coeffs().size(); ++p) {
      if (zpart.coeffs()[p].is_zero()) continue;
      for (std::size_t q = 0; q < wpart.coeffs().size(); ++q) {
        r.add_term(static_cast<int>(p), static_cast<int>(q), zpart.coeffs()[p] * wpart.coeffs()[q]);
      }
    }
  }
  return r;
}

UPoly KPoly2::at_z(const AlgebraicNumber& a) const {
  FieldPtr f = common_field(field_, a.field());
  std::vector<AlgebraicNumber> c(static_cast<std::size_t>(degree_w()) + 1, AlgebraicNumber::zero(f));
  std::map<int, AlgebraicNumber> apow;
  for (const auto& [e, v] : terms_) {
    auto it = apow.find(e.first);
    if (it == apow.end()) it = apow.emplace(e.first, a.lifted(f).pow(static_cast<unsigned long>(e.first))).first;
    c[static_cast<std::size_t>(e.second)] += v * it->second;
  }
  return UPoly(f, c);
}

AlgebraicNumber KPoly2::eval(const AlgebraicNumber& a, const AlgebraicNumber& b) const { return at_z(a).eval(b); }

KPoly2 KPoly2::derivative_z() const {
  KPoly2 r(field_);
  for (const auto& [e, c] : terms_) {
    if (e.first > 0) r.add_term(e.first - 1, e.second, c * AlgebraicNumber(static_cast<long>(e.first)));
  }
  return r;
}

std::string KPoly2::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = c.to_string();
    std::string mon;
    if (e.first > 0) mon += e.first == 1 ? "z" : "z^" + std::to_string(e.first);
    if (e.second > 0) {
      if (!mon.empty()) mon += "*";
      mon += e.second == 1 ? "w" : "w^" + std::to_string(e.second);
    }
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    if (compound) cs = "(" + cs + ")";
    std::string term = mon.empty() ? cs : (cs == "1" ? mon : (cs == "-1" ? "-" + mon : cs + "*" + mon));
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

}  // namespace curvel2
