#include "curvel2/l2_cohomology.hpp"

#include <algorithm>

#include "curvel2/errors.hpp"

namespace curvel2 {

std::string DimValue::to_string() const {
  if (is_exact()) return std::to_string(lo);
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

RRValue rr_on_component(int g, int d, Mode mode, DivisorClass cls) {
  const long chi = 1L - g + d;
  RRValue r;
  if (d < 0) {
    r.h0 = DimValue::exact(0);
    r.h1 = DimValue::exact(-chi);
    return r;
  }
  if (d > 2 * g - 2) {
    r.h0 = DimValue::exact(chi);
    r.h1 = DimValue::exact(0);
    return r;
  }
  // special range, g >= 1
  if (d == 0 && cls != DivisorClass::unknown) {
    r.h0 = DimValue::exact(1);
    r.h1 = DimValue::exact(g);
    return r;
  }
  const long floor = cls == DivisorClass::effective ? std::max(1L, chi) : std::max(0L, chi);
  if (mode == Mode::generic) {
    const long v = d == 0 ? 0 : floor;
    r.h0 = {v, v, true};
  } else {
    r.h0 = {floor, 1L + d / 2, true};
  }
  r.h1 = {r.h0.lo - chi, r.h0.hi - chi, true};
  return r;
}

bool CohomologyTable::has_class_dependence() const {
  for (const auto& e : entries) {
    for (const auto& row : e) {
      for (const auto& v : row) {
        if (v.class_dependent) return true;
      }
    }
  }
  return false;
}

namespace {

// Class information for Z - |Z| +/- D when L is known to be trivial.
DivisorClass shifted_class(bool trivial, int e) {
  if (!trivial) return DivisorClass::unknown;
  return e == 0 ? DivisorClass::trivial : DivisorClass::effective;
}

}  // namespace

CohomologyTable full_table(const CheckedCurve& c, const LineBundleSpec& l, Mode mode) {
  CohomologyTable t;
  t.mode = mode;
  t.m = c.m;
  t.g = c.g;
  t.degree = bundle_degree(c, l);
  t.correction = c.deg_z_minus_absz;
  const DivisorClass plain = l.trivial ? DivisorClass::trivial : DivisorClass::unknown;
  for (int e = 0; e < 2; ++e) {
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) t.entries[e][p][q] = DimValue::exact(0);
    }
  }
  for (const auto& comp : c.spec.components) {
    const int g = comp.genus;
    const int d = degree_on(l, comp.id);
    const int e = c.correction_of.at(comp.id);
    const DivisorClass sc = shifted_class(l.trivial, e);

    const RRValue w0 = rr_on_component(g, e + d, mode, sc);
    const RRValue w1 = rr_on_component(g, -d, mode, plain);
    const RRValue s0 = rr_on_component(g, d, mode, plain);
    const RRValue s1 = rr_on_component(g, e - d, mode, sc);

    t.at(Extension::w, 0, 0) = t.at(Extension::w, 0, 0) + w0.h0;
    t.at(Extension::w, 0, 1) = t.at(Extension::w, 0, 1) + w0.h1;
    t.at(Extension::w, 1, 0) = t.at(Extension::w, 1, 0) + w1.h1;
    t.at(Extension::w, 1, 1) = t.at(Extension::w, 1, 1) + w1.h0;
    t.at(Extension::s, 0, 0) = t.at(Extension::s, 0, 0) + s0.h0;
    t.at(Extension::s, 0, 1) = t.at(Extension::s, 0, 1) + s0.h1;
    t.at(Extension::s, 1, 0) = t.at(Extension::s, 1, 0) + s1.h1;
    t.at(Extension::s, 1, 1) = t.at(Extension::s, 1, 1) + s1.h0;
  }
  return t;
}

std::string entry_name(Extension e, int p, int q) {
  return std::string("h_") + (e == Extension::w ? "w" : "s") + "^{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

namespace {

// a - b where both interval endpoints must give the same difference.
IdentityCheck difference_identity(const std::string& name, const CohomologyTable& t, Extension e, int p1, int q1,
                                  int p2, int q2, const std::string& rhs_formula, const std::vector<long>& rhs_terms,
                                  const std::string& rhs_instance) {
  const DimValue& a = t.at(e, p1, q1);
  const DimValue& b = t.at(e, p2, q2);
  long rhs = 0;
  for (long v : rhs_terms) rhs += v;
  IdentityCheck c;
  c.name = name;
  const long dlo = a.lo - b.lo;
  const long dhi = a.hi - b.hi;
  c.lhs = entry_name(e, p1, q1) + " - " + entry_name(e, p2, q2) + " = " + a.to_string() + " - " + b.to_string() +
          " = " + (dlo == dhi ? std::to_string(dlo) : "[" + std::to_string(dlo) + "|" + std::to_string(dhi) + "]");
  c.rhs = rhs_formula + " = " + rhs_instance + " = " + std::to_string(rhs);
  c.pass = dlo == rhs && dhi == rhs;
  return c;
}

std::string signed_sum(const std::vector<long>& terms, const std::vector<char>& ops) {
  auto fmt = [](long v) { return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v); };
  std::string s = fmt(terms[0]);
  for (std::size_t i = 1; i < terms.size(); ++i) s += std::string(" ") + ops[i - 1] + " " + fmt(terms[i]);
  return s;
}

}  // namespace

std::vector<IdentityCheck> check_rr_w(const CohomologyTable& t) {
  const long m = t.m, g = t.g, d = t.degree, e = t.correction;
  return {
      difference_identity("rr_w_0", t, Extension::w, 0, 0, 0, 1, "m - g + deg L + deg(Z-|Z|)", {m, -g, d, e},
                          signed_sum({m, g, d, e}, {'-', '+', '+'})),
      difference_identity("rr_w_1", t, Extension::w, 1, 1, 1, 0, "m - g - deg L", {m, -g, -d},
                          signed_sum({m, g, d}, {'-', '-'})),
  };
}

std::vector<IdentityCheck> check_rr_s(const CohomologyTable& t) {
  const long m = t.m, g = t.g, d = t.degree, e = t.correction;
  return {
      difference_identity("rr_s_0", t, Extension::s, 0, 0, 0, 1, "m - g + deg L", {m, -g, d},
                          signed_sum({m, g, d}, {'-', '+'})),
      difference_identity("rr_s_1", t, Extension::s, 1, 1, 1, 0, "m - g + deg(Z-|Z|) - deg L", {m, -g, e, -d},
                          signed_sum({m, g, e, d}, {'-', '+', '-'})),
  };
}

std::vector<IdentityCheck> check_serre_duality(const CheckedCurve& c, const LineBundleSpec& l, Mode mode) {
  const CohomologyTable a = full_table(c, l, mode);
  const CohomologyTable b = full_table(c, dual(l), mode);
  std::vector<IdentityCheck> out;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      const DimValue& x = a.at(Extension::w, p, q);
      const DimValue& y = b.at(Extension::s, 1 - p, 1 - q);
      IdentityCheck ch;
      ch.name = "serre_" + std::to_string(p) + std::to_string(q);
      ch.lhs = entry_name(Extension::w, p, q) + "(L) = " + x.to_string();
      ch.rhs = entry_name(Extension::s, 1 - p, 1 - q) + "(L^-1) = " + y.to_string();
      ch.pass = x.lo == y.lo && x.hi == y.hi;
      out.push_back(std::move(ch));
    }
  }
  return out;
}

int vanishing_threshold(const CheckedCurve& c) {
  if (c.m != 1) throw InputError("vanishing threshold is stated for irreducible curves; use the per-component form");
  return vanishing_thresholds(c).begin()->second;
}

std::map<std::string, int> vanishing_thresholds(const CheckedCurve& c) {
  std::map<std::string, int> out;
  for (const auto& comp : c.spec.components) out[comp.id] = 2 * comp.genus - 2 - c.correction_of.at(comp.id);
  return out;
}

int ample_degree_bound(const CheckedCurve& c, const std::map<std::string, int>& eta) {
  int total = 2 * c.g;
  for (const auto& p : c.spec.singular_points) {
    if (p.branches.size() != 1) throw InputError("singular point '" + p.id + "' is not unibranch");
    auto it = eta.find(p.id);
    std::optional<int> v = it != eta.end() ? std::optional<int>(it->second) : p.eta;
    if (!v) throw InputError("no conductor exponent for singular point '" + p.id + "'");
    total += 1 + *v;
  }
  return total;
}

std::string LocalGroup::basis() const {
  if (zero) return "0";
  // the nonzero off-diagonal groups are spaces of 1-forms
  return std::string("{t^k") + (p != q ? " dt" : "") + " : k >= " + std::to_string(k_min) + "}";
}

std::vector<LocalGroup> local_table(int s) {
  if (s < 1) throw InputError("local_table: s must be at least 1");
  std::vector<LocalGroup> out;
  auto add = [&](const std::string& ext, int p, int q, bool zero, int k) {
    LocalGroup g;
    g.label = "H_" + ext + "^{" + std::to_string(p) + "," + std::to_string(q) + "}";
    g.p = p;
    g.q = q;
    g.zero = zero;
    g.k_min = zero ? 0 : k;
    out.push_back(std::move(g));
  };
  // weak: functions with poles of order < s, all (p,1) groups vanish
  add("w", 0, 0, false, 1 - s);
  add("w", 0, 1, true, 0);
  add("w", 1, 0, false, 0);
  add("w", 1, 1, true, 0);
  // strong: dual to weak
  add("s", 0, 0, true, 0);
  add("s", 0, 1, false, 0);
  add("s", 1, 0, true, 0);
  add("s", 1, 1, false, 1 - s);
  add("{s,w}", 0, 0, false, 0);
  add("{s,w}", 0, 1, true, 0);
  add("{s,w}", 1, 0, false, s - 1);
  add("{s,w}", 1, 1, true, 0);
  add("{w,s}", 0, 0, true, 0);
  add("{w,s}", 0, 1, false, s - 1);
  add("{w,s}", 1, 0, true, 0);
  add("{w,s}", 1, 1, false, 0);
  return out;
}

nlohmann::json to_json(const DimValue& v) {
  return {{"lo", v.lo}, {"hi", v.hi}, {"exact", v.is_exact()}, {"class_dependent", v.class_dependent}};
}

nlohmann::json to_json(const CohomologyTable& t) {
  nlohmann::json j;
  j["mode"] = t.mode == Mode::exact ? "exact" : "generic";
  j["m"] = t.m;
  j["g"] = t.g;
  j["deg_L"] = t.degree;
  j["deg_Z_minus_absZ"] = t.correction;
  nlohmann::json entries = nlohmann::json::object();
  for (Extension e : {Extension::w, Extension::s}) {
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) entries[entry_name(e, p, q)] = to_json(t.at(e, p, q));
    }
  }
  j["entries"] = entries;
  j["class_dependent"] = t.has_class_dependence();
  return j;
}

nlohmann::json to_json(const IdentityCheck& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
}

nlohmann::json to_json(const LocalGroup& g) {
  return {{"group", g.label}, {"zero", g.zero}, {"k_min", g.zero ? nlohmann::json(nullptr) : nlohmann::json(g.k_min)},
          {"basis", g.basis()}};
}

}  // namespace curvel2
