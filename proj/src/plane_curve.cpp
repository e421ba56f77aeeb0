// Ingestion of projective plane curves: chart selection, exact singular
// point search by elimination, local expansions and genus bookkeeping.

#include <algorithm>
#include <cstdlib>

#include "curvel2/curve_model.hpp"
#include "curvel2/errors.hpp"
#include "curvel2/factor.hpp"
#include "curvel2/poly_parse.hpp"

namespace curvel2 {

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

int total_degree(const std::vector<int>& e) { return e[0] + e[1] + e[2]; }

// Parses one component; homogenizes affine input.
SparsePoly parse_component(const std::string& text, int& degree) {
  SparsePoly p = parse_polynomial(text, kXYZ);
  if (p.empty()) throw InputError("equation '" + text + "' is the zero polynomial");
  int lo = 1 << 30;
  int hi = 0;
  for (const auto& [e, c] : p) {
    lo = std::min(lo, total_degree(e));
    hi = std::max(hi, total_degree(e));
  }
  if (lo != hi) {
    bool uses_z = false;
    for (const auto& [e, c] : p) uses_z |= e[2] > 0;
    if (uses_z) throw InputError("equation '" + text + "' is not homogeneous in x, y, z");
    SparsePoly h;
    for (const auto& [e, c] : p) h[{e[0], e[1], hi - total_degree(e)}] = c;
    p = std::move(h);
  }
  if (hi < 1) throw InputError("equation '" + text + "' has degree 0");
  degree = hi;
  return p;
}

SparsePoly linear(const mpq_class& cx, const mpq_class& cy, const mpq_class& cz) {
  SparsePoly r;
  if (cx != 0) r[{1, 0, 0}] = cx;
  if (cy != 0) r[{0, 1, 0}] = cy;
  if (cz != 0) r[{0, 0, 1}] = cz;
  return r;
}

SparsePoly power(const SparsePoly& b, int e) {
  SparsePoly r = {{{0, 0, 0}, mpq_class(1)}};
  for (int i = 0; i < e; ++i) r = sparse_mul(r, b);
  return r;
}

struct Chart {
  int a = 0, b = 0, c = 0;  // x -> x + a y, z -> z + b x + c y
  std::string describe() const {
    if (a == 0 && b == 0 && c == 0) return "identity";
    std::string s;
    auto term = [](int k, const std::string& v) {
      if (k == 0) return std::string();
      std::string sign = k < 0 ? " - " : " + ";
      int a = std::abs(k);
      return sign + (a == 1 ? v : std::to_string(a) + "*" + v);
    };
    if (a != 0) s += "x -> x" + term(a, "y");
    if (b != 0 || c != 0) s += std::string(s.empty() ? "" : ", ") + "z -> z" + term(b, "x") + term(c, "y");
    return s;
  }
};

SparsePoly apply_chart(const SparsePoly& f, const Chart& ch) {
  const SparsePoly X = linear(1, ch.a, 0);
  const SparsePoly Y = linear(0, 1, 0);
  const SparsePoly Z = linear(ch.b, ch.c, 1);
  SparsePoly out;
  for (const auto& [e, c] : f) {
    SparsePoly t = sparse_mul(sparse_mul(power(X, e[0]), power(Y, e[1])), power(Z, e[2]));
    out = sparse_add(out, sparse_scale(t, c));
  }
  return out;
}

SparsePoly partial(const SparsePoly& f, int var) {
  SparsePoly r;
  for (const auto& [e, c] : f) {
    if (e[static_cast<std::size_t>(var)] == 0) continue;
    std::vector<int> d = e;
    d[static_cast<std::size_t>(var)] -= 1;
    r = sparse_add(r, {{d, c * e[static_cast<std::size_t>(var)]}});
  }
  return r;
}

// Restriction to the line z = 0 in the chart x = 1, as a polynomial in y.
UPoly at_infinity(const SparsePoly& f) {
  const FieldPtr& q = NumberField::rationals();
  UPoly r(q);
  for (const auto& [e, c] : f) {
    if (e[2] != 0) continue;
    r += UPoly::monomial(q, AlgebraicNumber(c), static_cast<std::size_t>(e[1]));
  }
  return r;
}

// f(x, y, 1) as a KPoly2 with (z, w) standing for (x, y).
KPoly2 dehomogenize(const SparsePoly& f) {
  KPoly2 r(NumberField::rationals());
  for (const auto& [e, c] : f) r.add_term(e[0], e[1], AlgebraicNumber(c));
  return r;
}

bool chart_is_good(const SparsePoly& F, int d) {
  // (0:1:0) must not lie on the curve
  auto it = F.find({0, d, 0});
  if (it == F.end()) return false;
  // no singular points on z = 0; every point there has x != 0
  UPoly g = at_infinity(F);
  g = UPoly::gcd(g, at_infinity(partial(F, 0)));
  g = UPoly::gcd(g, at_infinity(partial(F, 1)));
  g = UPoly::gcd(g, at_infinity(partial(F, 2)));
  return g.degree() <= 0;
}

std::vector<Chart> chart_candidates() {
  std::vector<Chart> out;
  const int vals[] = {0, 1, -1, 2, -2, 3, -3};
  for (int a : vals) {
    for (int b : vals) {
      for (int c : vals) out.push_back({a, b, c});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Chart& u, const Chart& v) {
    return std::abs(u.a) + std::abs(u.b) + std::abs(u.c) < std::abs(v.a) + std::abs(v.b) + std::abs(v.c);
  });
  return out;
}

// prod over the roots y_k(x) of the monic (in y) f of g(x, y_k), by
// evaluation and interpolation.
UPoly eliminate_y(const KPoly2& f, const KPoly2& g, int degree_bound) {
  const FieldPtr& q = NumberField::rationals();
  std::vector<AlgebraicNumber> nodes, values;
  for (int i = 0; i <= degree_bound; ++i) {
    AlgebraicNumber x0(static_cast<long>(i));
    nodes.push_back(x0);
    values.push_back(UPoly::resultant(f.at_z(x0), g.at_z(x0)));
  }
  return interpolate(q, nodes, values);
}

std::string point_name(int index) { return "p" + std::to_string(index); }

struct LocalResult {
  SingularityInvariants inv;
  std::vector<int> delta_of;                 // per passing component
  std::vector<std::vector<int>> cross;       // per component pair
  std::vector<std::vector<PuiseuxBranch>> branches;  // per component
};

}  // namespace

PlaneCurveInput plane_curve_from_text(const std::string& text) {
  PlaneCurveInput in;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j = parse_json_text(text, "plane curve");
    if (j.contains("factors")) {
      if (!j["factors"].is_array() || j["factors"].empty()) throw InputError("plane curve: 'factors' must be a non-empty array");
      for (const auto& f : j["factors"]) {
        if (!f.is_string()) throw InputError("plane curve: factors must be strings");
        in.factors.push_back(f.get<std::string>());
      }
    } else if (j.contains("equation")) {
      if (!j["equation"].is_string()) throw InputError("plane curve: 'equation' must be a string");
      in.factors.push_back(j["equation"].get<std::string>());
    } else {
      throw InputError("plane curve: expected 'equation' or 'factors'");
    }
  } else {
    std::string eq;
    std::size_t pos = 0;
    // bare text: one equation per non-empty, non-comment line
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) in.factors.push_back(line);
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
    if (in.factors.empty()) throw InputError("plane curve: empty input");
  }
  return in;
}

PlaneCurveAnalysis analyze_plane_curve(const PlaneCurveInput& input, int truncation) {
  if (input.factors.empty()) throw InputError("plane curve: no equation given");
  const FieldPtr& Q = NumberField::rationals();
  const std::size_t m = input.factors.size();

  std::vector<SparsePoly> comps;
  std::vector<int> degs;
  SparsePoly F = {{{0, 0, 0}, mpq_class(1)}};
  int d = 0;
  for (const auto& text : input.factors) {
    int di = 0;
    comps.push_back(parse_component(text, di));
    degs.push_back(di);
    d += di;
    F = sparse_mul(F, comps.back());
  }

  {
    std::map<Exp2, mpq_class> affine;
    int z_order = 1 << 30;
    for (const auto& [e, c] : F) {
      affine[{e[0], e[1]}] += c;
      z_order = std::min(z_order, e[2]);
    }
    // a repeated factor other than z survives dehomogenization
    if (z_order >= 2 || !BivariatePoly(affine).is_squarefree()) {
      throw InputError("not squarefree: the curve has a repeated component");
    }
  }

  Chart chart;
  bool found = false;
  for (const Chart& ch : chart_candidates()) {
    if (chart_is_good(apply_chart(F, ch), d)) {
      chart = ch;
      found = true;
      break;
    }
  }
  if (!found) throw MathError("no admissible chart found (is the curve reduced?)");

  std::vector<KPoly2> fi;
  for (const auto& c : comps) fi.push_back(dehomogenize(apply_chart(c, chart)));
  KPoly2 f = dehomogenize(apply_chart(F, chart));
  // normalize to be monic in y
  const AlgebraicNumber lc = f.coeff(0, d);
  {
    KPoly2 g(Q);
    for (const auto& [e, c] : f.terms()) g.add_term(e.first, e.second, c / lc);
    f = g;
  }
  const KPoly2 fx = f.derivative_z();
  const KPoly2 fy = f.derivative_w();

  const int bound = d * (d - 1);
  UPoly r1 = eliminate_y(f, fy, bound);
  if (r1.is_zero()) throw InputError("not squarefree: the curve has a repeated component");
  UPoly r2 = eliminate_y(f, fx, bound);
  UPoly cand = UPoly::gcd(r1, r2);

  PlaneCurveAnalysis out;
  out.degrees = degs;
  out.chart = chart.describe();
  for (std::size_t i = 0; i < m; ++i) {
    out.spec.components.push_back({"c" + std::to_string(i + 1), 0, "plane_curve"});
  }
  std::vector<long> delta_sum(m, 0);
  std::vector<std::vector<long>> cross_sum(m, std::vector<long>(m, 0));
  int next_point = 1;

  if (cand.degree() > 0) {
    UPoly sq = cand.exact_div(UPoly::gcd(cand, cand.derivative())).monic();
    for (const PolyFactor& px : factor(sq)) {
      FieldPtr K = Q;
      AlgebraicNumber x0;
      if (px.poly.degree() == 1) {
        x0 = -px.poly.coeff(0);
      } else {
        K = adjoin_root(Q, px.poly, "a1");
        x0 = K->generator(K);
      }
      UPoly gy = UPoly::gcd(UPoly::gcd(f.at_z(x0), fx.at_z(x0)), fy.at_z(x0));
      if (gy.degree() <= 0) continue;
      for (const PolyFactor& py : factor(gy)) {
        FieldPtr L = K;
        AlgebraicNumber y0;
        if (py.poly.degree() == 1) {
          y0 = -py.poly.coeff(0);
        } else {
          L = adjoin_root(K, py.poly, "a" + std::to_string(K->level() + 1));
          y0 = L->generator(L);
        }
        if (static_cast<int>(L->absolute_degree()) > kMaxExtensionDegree) {
          throw MathError("singular locus needs an extension of degree " + std::to_string(L->absolute_degree()) +
                          ", beyond the supported " + std::to_string(kMaxExtensionDegree));
        }
        const long orbit = static_cast<long>(px.poly.degree()) * py.poly.degree();
        const AlgebraicNumber xl = x0.lifted(L);

        std::vector<KPoly2> local;
        std::vector<bool> passes(m, false);
        for (std::size_t i = 0; i < m; ++i) {
          local.push_back(fi[i].lifted(L).translated(xl, y0));
          passes[i] = local.back().coeff(0, 0).is_zero();
        }
        const int n0 = truncation > 0 ? truncation : default_truncation(d, d);
        auto compute = [&](int n) {
          LocalResult res;
          res.delta_of.assign(m, 0);
          res.cross.assign(m, std::vector<int>(m, 0));
          res.branches.assign(m, {});
          long mult = 0, mp = 0, count = 0, cross_total = 0, own = 0;
          for (std::size_t i = 0; i < m; ++i) {
            if (!passes[i]) continue;
            res.branches[i] = puiseux_expand(local[i], n, false);
            res.delta_of[i] = delta_invariant(res.branches[i]);
            own += res.delta_of[i];
            mult += multiplicity_branches(res.branches[i]);
            mp += mult_prime(res.branches[i]);
            for (const auto& b : res.branches[i]) count += b.count;
          }
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
              if (!passes[i] || !passes[j]) continue;
              long it = 0;
              for (const auto& b : res.branches[i]) it += b.count * order_along(local[j], b);
              res.cross[i][j] = static_cast<int>(it);
              cross_total += it;
            }
          }
          res.inv.multiplicity = static_cast<int>(mult);
          res.inv.mult_prime = static_cast<int>(mp);
          res.inv.delta = static_cast<int>(own + cross_total);
          res.inv.branch_count = static_cast<int>(count);
          if (count == 1) res.inv.conductor = 2 * res.inv.delta;
          res.inv.truncation = n;
          return res;
        };
        LocalResult res = truncation > 0 ? compute(truncation) : with_truncation_retry(n0, compute);

        PointReport rep;
        rep.x = xl.to_string();
        rep.y = y0.to_string();
        rep.tower = L->tower_description();
        rep.invariants = res.inv;
        for (std::size_t i = 0; i < m; ++i) {
          for (const auto& b : res.branches[i]) {
            rep.branches.push_back({"c" + std::to_string(i + 1), b.s, b.multiplicity(), b.count, b.series.to_string()});
          }
          delta_sum[i] += orbit * res.delta_of[i];
          for (std::size_t j = i + 1; j < m; ++j) cross_sum[i][j] += orbit * res.cross[i][j];
        }
        for (long k = 0; k < orbit; ++k) {
          SingularPointSpec sp;
          sp.id = point_name(next_point++);
          rep.ids.push_back(sp.id);
          for (std::size_t i = 0; i < m; ++i) {
            for (const auto& b : res.branches[i]) {
              for (long c = 0; c < b.count; ++c) sp.branches.push_back({"c" + std::to_string(i + 1), b.multiplicity()});
            }
          }
          sp.delta = res.inv.delta;
          if (res.inv.conductor) sp.eta = *res.inv.conductor;
          out.spec.singular_points.push_back(std::move(sp));
        }
        out.points.push_back(std::move(rep));
      }
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    const long pa = static_cast<long>(degs[i] - 1) * (degs[i] - 2) / 2;
    const long g = pa - delta_sum[i];
    if (g < 0) {
      throw MathError("negative computed genus " + std::to_string(g) + " for component c" + std::to_string(i + 1) +
                      " (is the component reducible? supply it in factored form)");
    }
    out.spec.components[i].genus = static_cast<int>(g);
    for (std::size_t j = i + 1; j < m; ++j) {
      const long expected = static_cast<long>(degs[i]) * degs[j];
      if (cross_sum[i][j] != expected) {
        throw MathError("intersection numbers of c" + std::to_string(i + 1) + " and c" + std::to_string(j + 1) +
                        " sum to " + std::to_string(cross_sum[i][j]) + ", expected " + std::to_string(expected));
      }
    }
  }
  std::string prov;
  for (std::size_t i = 0; i < m; ++i) prov += (i ? " ; " : "") + format_polynomial(comps[i], kXYZ);
  out.spec.provenance = prov;
  return out;
}

CurveSpec from_plane_curve(const PlaneCurveInput& input, int truncation) {
  return analyze_plane_curve(input, truncation).spec;
}

}  // namespace curvel2
