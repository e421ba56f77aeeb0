#include "curvel2/factor.hpp"

#include <algorithm>
#include <cstdint>

#include "curvel2/errors.hpp"

namespace curvel2 {

namespace {

// ---------------------------------------------------------------------------
// Integer polynomials

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ztrim(r);
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

mpz_class zcontent(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly zprimitive(ZPoly a) {
  mpz_class g = zcontent(a);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

// Symmetric residue modulo m.
mpz_class smod(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

ZPoly zreduce(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] % m;
    if (r[i] < 0) r[i] += m;
  }
  ztrim(r);
  return r;
}

// Exact division test over Z for primitive divisor b: returns true and sets q
// if b | a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  if (b.empty()) return false;
  if (a.size() < b.size()) return false;
  ZPoly r = a;
  q.assign(a.size() - b.size() + 1, 0);
  const std::size_t db = b.size() - 1;
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    if (r[k] % b.back() != 0) return false;
    mpz_class t = r[k] / b.back();
    q[k - db] = t;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= t * b[i];
  }
  for (const auto& c : r) {
    if (c != 0) return false;
  }
  ztrim(q);
  return true;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p (p < 2^31)

using MPoly = std::vector<std::int64_t>;

void mtrim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t mpow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::int64_t minv(std::int64_t a, std::int64_t p) { return mpow(a, p - 2, p); }

MPoly to_mod(const ZPoly& a, std::int64_t p) {
  MPoly r(a.size());
  const mpz_class pp = p;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class v = a[i] % pp;
    if (v < 0) v += pp;
    r[i] = v.get_si();
  }
  mtrim(r);
  return r;
}

MPoly mmul(const MPoly& a, const MPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  mtrim(r);
  return r;
}

MPoly madd(MPoly a, const MPoly& b, std::int64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
  mtrim(a);
  return a;
}

MPoly msub(MPoly a, const MPoly& b, std::int64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  mtrim(a);
  return a;
}

void mdivmod(const MPoly& a, const MPoly& b, std::int64_t p, MPoly& q, MPoly& r) {
  r = a;
  if (r.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  const std::int64_t inv = minv(b.back(), p);
  const std::size_t db = b.size() - 1;
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    std::int64_t t = r[k] * inv % p;
    q[k - db] = t;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = ((r[k - db + i] - t * b[i]) % p + p) % p;
  }
  mtrim(q);
  mtrim(r);
}

MPoly mmod(const MPoly& a, const MPoly& b, std::int64_t p) {
  MPoly q, r;
  mdivmod(a, b, p, q, r);
  return r;
}

MPoly mmonic(MPoly a, std::int64_t p) {
  if (a.empty()) return a;
  const std::int64_t inv = minv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

MPoly mgcd(MPoly a, MPoly b, std::int64_t p) {
  while (!b.empty()) {
    MPoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mmonic(a, p);
}

// Extended Euclid: s*a + t*b = 1 (a, b coprime).
void mxgcd(const MPoly& a, const MPoly& b, std::int64_t p, MPoly& s, MPoly& t) {
  MPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    MPoly q, r;
    mdivmod(r0, r1, p, q, r);
    MPoly s2 = msub(s0, mmul(q, s1, p), p);
    MPoly t2 = msub(t0, mmul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw MathError("Hensel lifting: modular factors are not coprime");
  const std::int64_t inv = minv(r0[0], p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  s = s0;
  t = t0;
}

MPoly mderiv(const MPoly& a, std::int64_t p) {
  if (a.size() <= 1) return {};
  MPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<std::int64_t>(i % p) % p;
  mtrim(d);
  return d;
}

MPoly mpowmod(MPoly base, std::int64_t e, const MPoly& mod, std::int64_t p) {
  MPoly r = {1};
  base = mmod(base, mod, p);
  while (e > 0) {
    if (e & 1) r = mmod(mmul(r, base, p), mod, p);
    base = mmod(mmul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

// Berlekamp factorization of a monic squarefree polynomial over F_p.
std::vector<MPoly> berlekamp(const MPoly& f, std::int64_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return {f};
  // Rows of Q: x^{ip} mod f.
  std::vector<MPoly> rows(n);
  rows[0] = {1};
  const MPoly xp = mpowmod({0, 1}, p, f, p);
  for (std::size_t i = 1; i < n; ++i) rows[i] = mmod(mmul(rows[i - 1], xp, p), f, p);
  // A = (Q - I)^T ; kernel vectors v satisfy A v = 0.
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t q = j < rows[i].size() ? rows[i][j] : 0;
      if (i == j) q = (q - 1 + p) % p;
      a[j][i] = q;
    }
  }
  // Reduced row echelon form.
  std::vector<int> pivot_col_of_row;
  std::vector<int> is_pivot(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    const std::int64_t inv = minv(a[row][col], p);
    for (auto& v : a[row]) v = v * inv % p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const std::int64_t fct = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] = ((a[r][c] - fct * a[row][c]) % p + p) % p;
    }
    is_pivot[col] = static_cast<int>(row);
    ++row;
  }
  std::vector<MPoly> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free] >= 0) continue;
    MPoly v(n, 0);
    v[free] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (is_pivot[col] < 0) continue;
      v[col] = (p - a[is_pivot[col]][free]) % p;
    }
    mtrim(v);
    basis.push_back(v);
  }
  const std::size_t r = basis.size();
  std::vector<MPoly> factors = {f};
  for (const auto& v : basis) {
    if (factors.size() >= r) break;
    if (v.size() <= 1) continue;
    for (std::int64_t s = 0; s < p && factors.size() < r; ++s) {
      std::vector<MPoly> next;
      for (const auto& g : factors) {
        if (g.size() <= 2) {
          next.push_back(g);
          continue;
        }
        MPoly vs = v;
        vs[0] = ((vs[0] - s) % p + p) % p;
        mtrim(vs);
        MPoly h = mgcd(g, vs, p);
        if (h.size() > 1 && h.size() < g.size()) {
          MPoly q, rem;
          mdivmod(g, h, p, q, rem);
          next.push_back(h);
          next.push_back(mmonic(q, p));
        } else {
          next.push_back(g);
        }
      }
      factors = std::move(next);
    }
  }
  return factors;
}

bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Lifts f = g*h (mod p) to f = G*H (mod p^k); g monic, lc(h) = lc(f) mod p.
void hensel_lift2(const ZPoly& f, const MPoly& g, const MPoly& h, std::int64_t p, unsigned k,
                  ZPoly& G, ZPoly& H) {
  MPoly s, t;
  mxgcd(g, h, p, s, t);
  const mpz_class pk = [&] {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), k);
    return r;
  }();
  G.assign(g.begin(), g.end());
  H.assign(h.begin(), h.end());
  H.back() = f.back() % pk;
  if (H.back() < 0) H.back() += pk;
  mpz_class m = p;
  for (unsigned j = 1; j < k; ++j) {
    ZPoly e = zsub(f, zmul(G, H));
    for (auto& c : e) {
      if (c % m != 0) throw MathError("Hensel lifting: congruence lost");
      c /= m;
    }
    MPoly em = to_mod(e, p);
    MPoly te = mmul(t, em, p);
    MPoly q, r;
    mdivmod(te, g, p, q, r);
    MPoly dh = madd(mmul(s, em, p), mmul(q, h, p), p);
    const mpz_class next = m * p;
    if (r.size() > G.size()) G.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) G[i] += m * r[i];
    if (dh.size() > H.size()) H.resize(dh.size(), 0);
    for (std::size_t i = 0; i < dh.size(); ++i) H[i] += m * dh[i];
    G = zreduce(G, next);
    H = zreduce(H, next);
    m = next;
  }
}

std::vector<ZPoly> hensel_lift(const ZPoly& f, std::vector<MPoly> factors, std::int64_t p, unsigned k) {
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), k);
  if (factors.size() == 1) {
    // monic representative of f mod p^k
    mpz_class lc = f.back() % pk;
    if (lc < 0) lc += pk;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
    ZPoly r = f;
    for (auto& c : r) c *= inv;
    return {zreduce(r, pk)};
  }
  MPoly g = factors[0];
  MPoly h = {to_mod({f.back()}, p).empty() ? 0 : to_mod({f.back()}, p)[0]};
  for (std::size_t i = 1; i < factors.size(); ++i) h = mmul(h, factors[i], p);
  ZPoly G, H;
  hensel_lift2(f, g, h, p, k, G, H);
  std::vector<ZPoly> out = {G};
  std::vector<MPoly> rest(factors.begin() + 1, factors.end());
  auto tail = hensel_lift(H, rest, p, k);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace

std::vector<std::vector<mpz_class>> factor_squarefree_integer(const std::vector<mpz_class>& input) {
  ZPoly f = zprimitive(input);
  ztrim(f);
  if (f.size() <= 2) return {f};
  const std::size_t n = f.size() - 1;

  // Pick the prime giving the fewest modular factors among a few candidates.
  std::int64_t best_p = 0;
  std::vector<MPoly> best;
  int tried = 0;
  for (std::int64_t p = 3; tried < 6 && p < 100000; p += 2) {
    if (!is_prime_small(p)) continue;
    if (f.back() % p == 0) continue;
    MPoly fm = to_mod(f, p);
    if (mgcd(fm, mderiv(fm, p), p).size() != 1) continue;
    ++tried;
    auto fac = berlekamp(mmonic(fm, p), p);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = std::move(fac);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw MathError("integer factorization: no suitable prime found");
  if (best.size() == 1) return {f};
  std::sort(best.begin(), best.end());

  // Mignotte-style bound on factor coefficients, doubled for symmetric residues.
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= static_cast<mp_bitcnt_t>(n);
  bound *= abs(f.back());
  bound *= 2;
  unsigned k = 1;
  mpz_class pk = best_p;
  while (pk <= bound) {
    pk *= best_p;
    ++k;
  }
  std::vector<ZPoly> lifted = hensel_lift(f, best, best_p, k);

  std::vector<ZPoly> result;
  ZPoly rem = f;
  std::size_t sub = 1;
  while (2 * sub <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(sub);
    for (std::size_t i = 0; i < sub; ++i) idx[i] = i;
    while (true) {
      ZPoly cand = {rem.back()};
      for (std::size_t i : idx) cand = zreduce(zmul(cand, lifted[i]), pk);
      for (auto& c : cand) c = smod(c, pk);
      ztrim(cand);
      cand = zprimitive(cand);
      ZPoly q;
      if (!cand.empty() && zdivides(rem, cand, q)) {
        result.push_back(cand);
        rem = zprimitive(q);
        for (std::size_t j = sub; j-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[j]));
        found = true;
        break;
      }
      // next combination
      std::size_t pos = sub;
      while (pos > 0 && idx[pos - 1] == lifted.size() - sub + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < sub; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++sub;
  }
  if (rem.size() > 1) result.push_back(rem);
  return result;
}

std::vector<PolyFactor> squarefree_decomposition(const UPoly& f) {
  std::vector<PolyFactor> out;
  if (f.degree() <= 0) return out;
  UPoly fd = f.derivative();
  UPoly a = UPoly::gcd(f, fd);
  UPoly b = f.exact_div(a).monic();
  UPoly c = fd.exact_div(a);
  UPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly ai = UPoly::gcd(b, d);
    UPoly bn = b.exact_div(ai).monic();
    UPoly cn = d.exact_div(ai);
    if (ai.degree() > 0) out.push_back({ai, i});
    b = std::move(bn);
    d = cn - b.derivative();
    ++i;
  }
  return out;
}

namespace {

std::vector<UPoly> factor_squarefree_rational(const UPoly& f) {
  // Clear denominators to a primitive integer polynomial.
  mpz_class den = 1;
  for (const auto& c : f.coeffs()) {
    mpq_class q = c.to_rational();
    den = lcm(den, mpz_class(q.get_den()));
  }
  ZPoly z;
  for (const auto& c : f.coeffs()) {
    mpq_class q = c.to_rational() * den;
    z.push_back(mpz_class(q.get_num()));
  }
  std::vector<UPoly> out;
  for (const auto& g : factor_squarefree_integer(z)) {
    std::vector<mpq_class> qc(g.begin(), g.end());
    out.push_back(UPoly::from_rationals(qc).monic());
  }
  return out;
}

UPoly norm_to_parent(const UPoly& g) {
  const FieldPtr& k = g.field();
  const FieldPtr& parent = k->parent();
  const std::size_t deg = static_cast<std::size_t>(g.degree()) * k->degree();
  std::vector<AlgebraicNumber> nodes, values;
  for (std::size_t j = 0; j <= deg; ++j) {
    AlgebraicNumber x = AlgebraicNumber::rational(parent, static_cast<long>(j));
    nodes.push_back(x);
    values.push_back(g.eval(x.lifted(k)).norm_to_parent());
  }
  return interpolate(parent, nodes, values);
}

std::vector<UPoly> factor_squarefree_tower(const UPoly& f) {
  const FieldPtr& k = f.field();
  const AlgebraicNumber alpha = k->generator(k);
  for (int attempt = 0; attempt < 40; ++attempt) {
    const long shift = (attempt % 2 == 0) ? attempt / 2 : -(attempt + 1) / 2;
    const AlgebraicNumber ka = alpha * AlgebraicNumber(shift);
    UPoly g = f.shifted(-ka);
    UPoly n = norm_to_parent(g);
    if (!n.is_squarefree()) continue;
    std::vector<UPoly> out;
    for (const auto& pf : factor(n)) {
      UPoly h = UPoly::gcd(g, pf.poly.lifted(k));
      if (h.degree() <= 0) continue;
      out.push_back(h.shifted(ka).monic());
    }
    return out;
  }
  throw MathError("factorization over " + k->generator_name() +
                  ": no squarefree norm found for " + f.to_string());
}

}  // namespace

std::vector<PolyFactor> factor(const UPoly& f) {
  if (f.is_zero()) throw MathError("cannot factor the zero polynomial");
  std::vector<PolyFactor> out;
  for (const auto& sq : squarefree_decomposition(f.monic())) {
    std::vector<UPoly> parts;
    if (sq.poly.degree() == 1) {
      parts = {sq.poly};
    } else if (sq.poly.field()->level() == 0) {
      parts = factor_squarefree_rational(sq.poly);
    } else {
      parts = factor_squarefree_tower(sq.poly);
    }
    for (auto& p : parts) out.push_back({std::move(p), sq.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    return a.poly.to_string() < b.poly.to_string();
  });
  return out;
}

FieldPtr adjoin_root(const FieldPtr& base, const UPoly& minpoly, const std::string& name) {
  UPoly m = minpoly.lifted(common_field(base, minpoly.field())).monic();
  if (m.field() != base) throw MathError("adjoin_root: polynomial is not defined over the base field");
  if (m.degree() < 2) throw MathError("adjoin_root: degree must be at least 2");
  auto fac = factor(m);
  if (fac.size() != 1 || fac[0].multiplicity != 1) {
    throw MathError("cannot construct extension: minimal polynomial " + m.to_string(name) +
                    " is reducible over the base field");
  }
  return NumberField::make_extension(base, name, m.coeffs());
}

bool find_rational_root(const UPoly& p, AlgebraicNumber& root) {
  for (const auto& f : factor(p)) {
    if (f.poly.degree() == 1) {
      root = -f.poly.coeff(0);
      return true;
    }
  }
  return false;
}

}  // namespace curvel2
