#include "curvel2/puiseux.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "curvel2/factor.hpp"

namespace curvel2 {

namespace {

struct RawBranch {
  int s;
  Series w;
  long count;
};

std::string next_generator_name(const FieldPtr& k) { return "a" + std::to_string(k->level() + 1); }

// A root of x^q - r in a minimal extension of r's field.
AlgebraicNumber qth_root(const AlgebraicNumber& r, int q) {
  if (q == 1) return r;
  const FieldPtr& k = r.field();
  std::vector<AlgebraicNumber> coeffs(static_cast<std::size_t>(q) + 1, AlgebraicNumber::zero(k));
  coeffs[0] = -r;
  coeffs.back() = AlgebraicNumber::one(k);
  auto fac = factor(UPoly(k, coeffs));
  const UPoly& h = fac.front().poly;  // factors come sorted by degree
  if (h.degree() == 1) {
    // prefer a positive rational root, so that w^2 = z^3 gives w = t^3
    for (const auto& pf : fac) {
      if (pf.poly.degree() != 1) break;
      AlgebraicNumber root = -pf.poly.coeff(0);
      if (root.is_rational() && root.to_rational() > 0) return root;
    }
    return -h.coeff(0);
  }
  FieldPtr ext = adjoin_root(k, h, next_generator_name(k));
  return ext->generator(ext);
}

// Simple root: w = W(z) with W(0) = 0 by Newton iteration with doubling precision.
Series newton_solve(const KPoly2& g, int n) {
  const FieldPtr& f = g.field();
  const KPoly2 gw = g.derivative_w();
  Series w(f, {}, 1);
  int p = 1;
  while (p < n) {
    p = std::min(2 * p, n);
    w = Series(f, w.coeffs(), p);
    Series num = g.substitute(1, w).truncated(p);
    Series den = gw.substitute(1, w).truncated(p);
    w = (w - Series::divide(num, den)).truncated(p);
  }
  return Series(f, w.coeffs(), n);
}

void expand_rec(const KPoly2& f, int n, int depth, std::vector<RawBranch>& out) {
  if (depth > n) throw TruncationError("branches not separated below order " + std::to_string(n));
  const int jmin = f.min_w_degree();
  if (jmin >= 2) throw InputError("not squarefree: repeated factor w");
  if (jmin == 1) out.push_back({1, Series(f.field(), {}, n), 1});

  std::vector<Exp2> support;
  for (const auto& [e, c] : f.terms()) support.push_back(e);
  const NewtonPolygon poly = newton_polygon_of_support(support);

  for (const NewtonEdge& edge : poly.edges) {
    const int m = static_cast<int>(mpz_class(edge.slope.get_num()).get_si());
    const int q = static_cast<int>(mpz_class(edge.slope.get_den()).get_si());
    const int jlow = edge.points.back().second;
    const int len = edge.height() / q;
    std::vector<AlgebraicNumber> pc(static_cast<std::size_t>(len) + 1, AlgebraicNumber::zero(f.field()));
    for (const auto& pt : edge.points) {
      pc[static_cast<std::size_t>((pt.second - jlow) / q)] = f.coeff(pt.first, pt.second);
    }
    const UPoly edge_poly(f.field(), pc);
    for (const PolyFactor& pf : factor(edge_poly)) {
      AlgebraicNumber r;
      if (pf.poly.degree() == 1) {
        r = -pf.poly.coeff(0);
      } else {
        FieldPtr k1 = adjoin_root(f.field(), pf.poly, next_generator_name(f.field()));
        r = k1->generator(k1);
      }
      const AlgebraicNumber c = qth_root(r, q);
      const KPoly2 f1 = f.lifted(c.field()).puiseux_transform(q, m, c);
      std::vector<RawBranch> children;
      if (pf.multiplicity == 1) {
        children.push_back({1, newton_solve(f1, n), 1});
      } else {
        expand_rec(f1, n, depth + 1, children);
      }
      for (auto& ch : children) {
        Series w = (ch.w + Series::monomial(ch.w.field(), c, 0)).shifted(ch.s * m).truncated(n);
        out.push_back({ch.s * q, std::move(w), ch.count * pf.poly.degree()});
      }
    }
  }
}

// Lowest-degree homogeneous part, as coefficients a_i of z^i w^{m-i}.
std::vector<AlgebraicNumber> initial_form(const KPoly2& f, int& m) {
  m = f.order();
  std::vector<AlgebraicNumber> a(static_cast<std::size_t>(m) + 1, AlgebraicNumber::zero(f.field()));
  for (const auto& [e, c] : f.terms()) {
    if (e.first + e.second == m) a[static_cast<std::size_t>(e.first)] = c;
  }
  return a;
}

int check_precision(const Series& v, const std::string& what) {
  const int o = v.order();
  if (o >= v.precision()) throw TruncationError(what);
  return o;
}

}  // namespace

NewtonPolygon newton_polygon_of_support(const std::vector<Exp2>& support) {
  int n = -1;
  int jmin = INT_MAX;
  for (const auto& e : support) {
    if (e.first == 0 && (n < 0 || e.second < n)) n = e.second;
    jmin = std::min(jmin, e.second);
  }
  if (n < 0) throw InputError("z divides the polynomial (vertical component z = 0)");
  if (n == 0) throw InputError("point is not on the curve: f(0,0) != 0");
  NewtonPolygon poly;
  Exp2 cur{0, n};
  while (cur.second > jmin) {
    // next vertex: minimal slope (di/dj), ties broken by the lowest j
    Exp2 best{-1, -1};
    mpq_class best_slope;
    for (const auto& e : support) {
      if (e.second >= cur.second) continue;
      mpq_class sl(e.first - cur.first, cur.second - e.second);
      sl.canonicalize();
      if (best.first < 0 || sl < best_slope || (sl == best_slope && e.second < best.second)) {
        best = e;
        best_slope = sl;
      }
    }
    NewtonEdge edge;
    edge.slope = best_slope;
    for (const auto& e : support) {
      if (e.second > cur.second || e.second < best.second) continue;
      mpq_class sl = e.second == cur.second ? mpq_class(-1) : mpq_class(e.first - cur.first, cur.second - e.second);
      sl.canonicalize();
      if (e == cur || (e.second < cur.second && sl == best_slope)) edge.points.push_back(e);
    }
    std::sort(edge.points.begin(), edge.points.end());
    edge.lattice_length = std::gcd(best.first - cur.first, cur.second - best.second);
    poly.edges.push_back(std::move(edge));
    cur = best;
  }
  return poly;
}

NewtonPolygon newton_polygon(const BivariatePoly& f) {
  std::vector<Exp2> support;
  for (const auto& [e, c] : f.terms()) support.push_back(e);
  return newton_polygon_of_support(support);
}

int PuiseuxBranch::multiplicity() const { return std::min(s, order()); }

Series PuiseuxBranch::untilted_series() const {
  if (!tangent_aligned || change.tilt.is_zero()) return series;
  return series + Series::monomial(series.field(), change.tilt, s);
}

KPoly2 PuiseuxBranch::local_equation() const {
  if (!tangent_aligned || change.tilt.is_zero()) return *equation;
  return equation->tilted(change.tilt);
}

Series PuiseuxBranch::substitution_residual() const { return local_equation().substitute(s, series); }

std::vector<std::pair<int, AlgebraicNumber>> PuiseuxBranch::coefficients() const {
  std::vector<std::pair<int, AlgebraicNumber>> out;
  for (int k = 0; k < series.stored(); ++k) {
    if (!series.coeff(k).is_zero()) out.emplace_back(k, series.coeff(k));
  }
  return out;
}

int default_truncation(int degree_z, int degree_w) { return std::max(8, 4 * degree_w * degree_z); }

int truncation_cap() {
  const char* env = std::getenv("CURVE_L2_TRUNCATION_CAP");
  if (env == nullptr || *env == '\0') return 512;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) throw InputError("CURVE_L2_TRUNCATION_CAP must be a positive integer");
  return static_cast<int>(std::min<long>(v, 1L << 20));
}

std::vector<PuiseuxBranch> puiseux_expand(const KPoly2& input, int truncation, bool tangent_aligned) {
  if (truncation < 1) throw InputError("truncation order must be positive");
  if (input.is_zero()) throw InputError("the zero polynomial is not a curve equation");
  if (!input.coeff(0, 0).is_zero()) throw InputError("point is not on the curve: f(0,0) != 0");
  KPoly2 f = input;
  AlgebraicNumber shear = AlgebraicNumber::zero(f.field());
  if (tangent_aligned) {
    int m = 0;
    auto a = initial_form(f, m);
    if (a[0].is_zero()) {
      // the w-axis lies in the tangent cone; pick the smallest lambda with f*(lambda, 1) != 0
      for (long lam = 1;; ++lam) {
        AlgebraicNumber v = AlgebraicNumber::zero(f.field());
        for (int i = m; i >= 0; --i) v = v * AlgebraicNumber(lam) + a[static_cast<std::size_t>(i)];
        if (!v.is_zero()) {
          shear = AlgebraicNumber(lam);
          break;
        }
      }
      f = f.sheared(shear);
    }
  } else if (f.order_w_on_axis() < 0) {
    throw InputError(
        "z divides f (the line z = 0 is a component); apply a coordinate change such as z -> z + w "
        "or request tangent-aligned output");
  }

  std::vector<RawBranch> raw;
  expand_rec(f, truncation, 0, raw);

  long sheets = 0;
  for (const auto& b : raw) sheets += b.count * b.s;
  if (sheets != f.order_w_on_axis()) throw MathError("sheet count does not match ord_w f(0,w)");

  auto eq = std::make_shared<const KPoly2>(f);
  std::vector<PuiseuxBranch> out;
  for (auto& r : raw) {
    if (r.s > truncation) {
      throw TruncationError("ramification index " + std::to_string(r.s) + " exceeds N = " + std::to_string(truncation));
    }
    PuiseuxBranch b;
    b.s = r.s;
    b.truncation = truncation;
    b.count = r.count;
    b.equation = eq;
    b.tangent_aligned = tangent_aligned;
    b.change.shear = shear;
    b.change.tilt = AlgebraicNumber::zero(r.w.field());
    b.series = r.w;
    if (tangent_aligned) {
      b.change.tilt = r.w.coeff(r.s);
      b.series = r.w - Series::monomial(r.w.field(), b.change.tilt, r.s);
    }
    if (!b.substitution_residual().is_zero_to_precision()) {
      throw MathError("internal error: branch fails the substitution check");
    }
    out.push_back(std::move(b));
  }
  std::stable_sort(out.begin(), out.end(), [](const PuiseuxBranch& x, const PuiseuxBranch& y) {
    if (x.s != y.s) return x.s < y.s;
    if (x.count != y.count) return x.count < y.count;
    return x.series.to_string() < y.series.to_string();
  });
  return out;
}

std::vector<PuiseuxBranch> puiseux_expand(const BivariatePoly& f, int truncation, bool tangent_aligned) {
  if (!f.is_squarefree()) throw InputError("not squarefree: " + f.to_string());
  return puiseux_expand(KPoly2::from_rational(f), truncation, tangent_aligned);
}

int multiplicity_initial_form(const BivariatePoly& f) {
  if (!f.vanishes_at_origin()) throw InputError("point is not on the curve: f(0,0) != 0");
  return f.order();
}

int multiplicity_branches(const std::vector<PuiseuxBranch>& branches) {
  if (branches.empty()) throw InputError("empty branch list");
  long total = 0;
  for (const auto& b : branches) total += b.count * b.multiplicity();
  return static_cast<int>(total);
}

int mult_prime(const std::vector<PuiseuxBranch>& branches) {
  if (branches.empty()) throw InputError("empty branch list");
  long total = 0;
  for (const auto& b : branches) total += b.count * (b.multiplicity() - 1);
  return static_cast<int>(total);
}

int order_along(const KPoly2& g, const PuiseuxBranch& b) {
  return check_precision(g.substitute(b.s, b.untilted_series()), "order along branch reaches the truncation order");
}

int intersection_multiplicity(const PuiseuxBranch& b1, const PuiseuxBranch& b2) {
  if (b1.change.shear != b2.change.shear) throw MathError("branches are expressed in different coordinates");
  const FieldPtr k = common_field(b1.field(), b2.field());
  const Series w1 = b1.untilted_series().lifted(k);
  const Series w2 = b2.untilted_series().lifted(k);
  const int s1 = b1.s;
  const int s2 = b2.s;
  const int prec = std::min(w1.precision(), s1 * (w2.precision() / s2));
  if (prec < 1) throw TruncationError("intersection multiplicity");
  // element w1(t) - w2(u) of K((t))[u]/(u^{s2} - t^{s1}) in the basis 1, u, ..., u^{s2-1}
  std::vector<Series> e(static_cast<std::size_t>(s2), Series(k, {}, prec));
  e[0] = w1.truncated(prec);
  for (int j = 1; j < w2.stored(); ++j) {
    const AlgebraicNumber c = w2.coeff(j);
    if (c.is_zero()) continue;
    const int shift = s1 * (j / s2);
    if (shift >= prec) continue;
    e[static_cast<std::size_t>(j % s2)] -= Series::monomial(k, c, shift, prec);
  }
  // multiplication matrix: column j holds e * u^j
  std::vector<std::vector<Series>> mat(static_cast<std::size_t>(s2), std::vector<Series>(static_cast<std::size_t>(s2), Series(k, {}, prec)));
  for (int j = 0; j < s2; ++j) {
    for (int r = 0; r < s2; ++r) {
      const int idx = r + j;
      mat[static_cast<std::size_t>(idx % s2)][static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(r)].shifted(s1 * (idx / s2)).truncated(prec);
    }
  }
  // determinant by expansion over column subsets
  const std::size_t full = (std::size_t{1} << s2);
  std::vector<Series> dp(full, Series(k, {}, prec));
  dp[0] = Series::monomial(k, AlgebraicNumber::one(k), 0, prec);
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (dp[mask].stored() == 0) continue;
    const int row = __builtin_popcountll(mask);
    if (row >= s2) continue;
    for (int col = 0; col < s2; ++col) {
      if (mask & (std::size_t{1} << col)) continue;
      const int above = __builtin_popcountll(mask >> (col + 1));
      Series term = (dp[mask] * mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]).truncated(prec);
      if (above % 2 == 1) term = -term;
      dp[mask | (std::size_t{1} << col)] += term;
    }
  }
  Series det = dp[full - 1].truncated(prec);
  return check_precision(det, "contact order of the two branches reaches the truncation order");
}

int branch_delta(const PuiseuxBranch& b) {
  if (b.s == 1) return 0;
  const FieldPtr& k = b.field();
  Series x = Series::monomial(k, AlgebraicNumber::one(k), b.s);
  Series y = b.untilted_series();
  int delta = 0;
  for (int guard = 0; guard < 4 * b.truncation + 8; ++guard) {
    const int vx = x.order();
    const int vy = y.order();
    const bool kx = vx < x.precision();
    const bool ky = vy < y.precision();
    bool x_smaller;
    int m;
    if (kx && ky) {
      x_smaller = vx <= vy;
      m = std::min(vx, vy);
    } else if (kx && y.precision() > vx) {
      x_smaller = true;
      m = vx;
    } else if (ky && x.precision() > vy) {
      x_smaller = false;
      m = vy;
    } else {
      throw TruncationError("multiplicity sequence of the branch");
    }
    delta += m * (m - 1) / 2;
    if (m <= 1) return delta;
    if (x_smaller) {
      Series q = Series::divide(y, x);
      if (q.precision() < 1) throw TruncationError("multiplicity sequence of the branch");
      y = q - Series::monomial(k, q.coeff(0), 0);
    } else {
      Series q = Series::divide(x, y);
      if (q.precision() < 1) throw TruncationError("multiplicity sequence of the branch");
      x = q - Series::monomial(k, q.coeff(0), 0);
    }
  }
  throw TruncationError("multiplicity sequence of the branch");
}

int delta_invariant(const std::vector<PuiseuxBranch>& branches) {
  if (branches.empty()) throw InputError("empty branch list");
  long own = 0;
  bool pairwise = true;
  for (const auto& b : branches) {
    own += b.count * branch_delta(b);
    if (b.count != 1) pairwise = false;
  }
  if (pairwise) {
    for (std::size_t i = 0; i < branches.size() && pairwise; ++i) {
      for (std::size_t j = i + 1; j < branches.size(); ++j) {
        try {
          (void)common_field(branches[i].field(), branches[j].field());
        } catch (const MathError&) {
          pairwise = false;
          break;
        }
      }
    }
  }
  long cross = 0;
  if (pairwise) {
    for (std::size_t i = 0; i < branches.size(); ++i) {
      for (std::size_t j = i + 1; j < branches.size(); ++j) cross += intersection_multiplicity(branches[i], branches[j]);
    }
  } else {
    // sum over other branches of I(b, .) = ord_t f_w(b(t)) - (2 delta_b + s - 1)
    long twice = 0;
    for (const auto& b : branches) {
      if (b.equation != branches.front().equation) throw MathError("branches come from different expansions");
      const int polar = order_along(b.equation->derivative_w(), b);
      twice += b.count * (polar - 2 * branch_delta(b) - b.s + 1);
    }
    if (twice % 2 != 0) throw MathError("odd total intersection number");
    cross = twice / 2;
  }
  return static_cast<int>(own + cross);
}

int conductor_exponent(const PuiseuxBranch& b) {
  if (b.count != 1) throw InputError("conductor exponent is only computed for unibranch points");
  return 2 * branch_delta(b);
}

SingularityInvariants singularity_invariants(const KPoly2& f, int truncation) {
  auto branches = puiseux_expand(f, truncation, false);
  SingularityInvariants inv;
  inv.multiplicity = multiplicity_branches(branches);
  inv.mult_prime = mult_prime(branches);
  inv.delta = delta_invariant(branches);
  long count = 0;
  for (const auto& b : branches) count += b.count;
  inv.branch_count = static_cast<int>(count);
  if (count == 1) inv.conductor = conductor_exponent(branches.front());
  inv.truncation = truncation;
  return inv;
}

SingularityInvariants singularity_invariants(const BivariatePoly& f, int truncation) {
  if (!f.is_squarefree()) throw InputError("not squarefree: " + f.to_string());
  const int n0 = truncation > 0 ? truncation : default_truncation(f.degree_z(), f.degree_w());
  const KPoly2 k = KPoly2::from_rational(f);
  return with_truncation_retry(n0, [&](int n) { return singularity_invariants(k, n); });
}

}  // namespace curvel2
