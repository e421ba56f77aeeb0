#include "curvel2/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "curvel2/errors.hpp"
#include "curvel2/l2_cohomology.hpp"
#include "curvel2/local_analysis.hpp"
#include "curvel2/puiseux.hpp"

namespace curvel2 {

const std::vector<CorpusGerm>& singularity_corpus() {
  static const std::vector<CorpusGerm> corpus = {
      {"cusp A2", "w^2 - z^3"},
      {"node A1", "w^2 - z^2 - z^3"},
      {"tacnode A3", "w^2 - z^4"},
      {"ramphoid cusp A4", "w^2 - z^5"},
      {"A5", "w^2 - z^6"},
      {"E6", "w^3 - z^4"},
      {"E8", "w^3 - z^5"},
      {"ordinary triple point D4", "w^3 - z^3"},
      {"D4 with rational branches", "w^3 - w*z^2"},
      {"irrational node", "w^2 - 2*z^2"},
      {"W-type w^4 = z^6", "w^4 - z^6"},
      {"two Puiseux pairs", "(w^2 - z^3)^2 - 4*z^5*w - z^7"},
      {"node and cusp", "(w^2 - z^2 - z^3)*(w^2 - 2*z^3)"},
      {"cusp and tangent parabola", "(w^2 - z^3)*(w - z^2)"},
      {"w^3 = z^7", "w^3 - z^7"},
      {"line pencil", "z*w*(z - w)*(z + w)"},
  };
  return corpus;
}

std::vector<FuzzCase> fuzz_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  std::vector<FuzzCase> out;
  for (int c = 0; c < count; ++c) {
    FuzzCase fc;
    const int m = uni(1, 3);
    for (int i = 0; i < m; ++i) fc.spec.components.push_back({"c" + std::to_string(i + 1), uni(0, 5)});
    const int k = uni(0, 4);
    for (int i = 0; i < k; ++i) {
      SingularPointSpec p;
      p.id = "p" + std::to_string(i + 1);
      const int nb = uni(1, 3);
      for (int b = 0; b < nb; ++b) {
        // a lone branch must be singular
        p.branches.push_back({"c" + std::to_string(uni(1, m)), uni(nb == 1 ? 2 : 1, 5)});
      }
      fc.spec.singular_points.push_back(std::move(p));
    }
    for (int i = 0; i < m; ++i) fc.bundle.degrees["c" + std::to_string(i + 1)] = uni(-10, 10);
    out.push_back(std::move(fc));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

bool all_pass(const std::vector<IdentityCheck>& v) {
  for (const auto& c : v) {
    if (!c.pass) return false;
  }
  return true;
}

struct Expanded {
  const CorpusGerm* germ;
  BivariatePoly f;
  std::vector<PuiseuxBranch> branches;
};

std::vector<Expanded> expand_corpus() {
  std::vector<Expanded> out;
  for (const auto& g : singularity_corpus()) {
    BivariatePoly f = BivariatePoly::parse(g.equation);
    const int n0 = default_truncation(f.degree_z(), f.degree_w());
    auto br = with_truncation_retry(n0, [&](int n) { return puiseux_expand(f, n, true); });
    out.push_back({&g, f, std::move(br)});
  }
  return out;
}

CriterionResult criterion_1(const std::vector<Expanded>& corpus) {
  CriterionResult r;
  r.pass = true;
  int branches = 0;
  std::string bad;
  for (const auto& e : corpus) {
    for (const auto& b : e.branches) {
      ++branches;
      const Series res = b.substitution_residual();
      if (!res.is_zero_to_precision() || res.precision() < b.truncation) {
        r.pass = false;
        bad += " " + e.germ->name;
      }
    }
  }
  r.detail = std::to_string(corpus.size()) + " germs, " + std::to_string(branches) +
             " branch classes, residual f(t^s, w(t)) = 0 mod t^N" + (bad.empty() ? "" : "; failing:" + bad);
  return r;
}

CriterionResult criterion_2(const std::vector<Expanded>& corpus) {
  CriterionResult r;
  r.pass = true;
  std::string bad;
  for (const auto& e : corpus) {
    const int a = multiplicity_initial_form(e.f);
    const int b = multiplicity_branches(e.branches);
    if (a != b) {
      r.pass = false;
      bad += " " + e.germ->name + " (" + std::to_string(a) + " vs " + std::to_string(b) + ")";
    }
  }
  r.detail = "initial form degree = sum over branches on " + std::to_string(corpus.size()) + " germs" +
             (bad.empty() ? "" : "; mismatch:" + bad);
  return r;
}

CriterionResult criterion_3(std::uint64_t seed) {
  CriterionResult r;
  r.pass = true;
  int checked = 0, failed = 0;
  for (const auto& fc : fuzz_corpus(seed, 200)) {
    const CheckedCurve c = validate(fc.spec);
    const CohomologyTable t = full_table(c, fc.bundle, Mode::generic);
    const bool ok = all_pass(check_rr_w(t)) && all_pass(check_rr_s(t)) &&
                    all_pass(check_serre_duality(c, fc.bundle, Mode::generic));
    ++checked;
    if (!ok) ++failed;
  }
  r.pass = failed == 0;
  r.detail = std::to_string(checked) + " seeded specs (seed " + std::to_string(seed) + "), " +
             std::to_string(failed) + " failures";
  return r;
}

CriterionResult criterion_4() {
  CriterionResult r;
  r.pass = true;
  const CurveSpec cusp = from_plane_curve({{"y^2*z - x^3"}});
  const CohomologyTable t = full_table(validate(cusp), trivial_bundle());
  auto val = [&](const CohomologyTable& tb, Extension e, int p, int q) {
    const DimValue& v = tb.at(e, p, q);
    return v.is_exact() ? v.lo : -1;
  };
  const long w[4] = {val(t, Extension::w, 0, 0), val(t, Extension::w, 0, 1), val(t, Extension::w, 1, 0),
                     val(t, Extension::w, 1, 1)};
  const long s[4] = {val(t, Extension::s, 0, 0), val(t, Extension::s, 0, 1), val(t, Extension::s, 1, 0),
                     val(t, Extension::s, 1, 1)};
  const bool cusp_ok = w[0] == 2 && w[1] == 0 && w[2] == 0 && w[3] == 1 && s[0] == 1 && s[1] == 0 && s[2] == 0 &&
                       s[3] == 2;
  const CurveSpec node = from_plane_curve({{"y^2*z - x^3 - x^2*z"}});
  LineBundleSpec l;
  l.degrees[node.components.at(0).id] = 3;
  const long n00 = val(full_table(validate(node), l), Extension::w, 0, 0);
  r.pass = cusp_ok && n00 == 4;
  std::ostringstream d;
  d << "cuspidal cubic h_w = (" << w[0] << "," << w[1] << ";" << w[2] << "," << w[3] << ") h_s = (" << s[0] << ","
    << s[1] << ";" << s[2] << "," << s[3] << "), nodal cubic deg 3 h_w^{0,0} = " << n00;
  r.detail = d.str();
  return r;
}

CriterionResult criterion_5() {
  CriterionResult r;
  r.pass = true;
  int agree = 0, total = 0, marginal_ok = 0, marginal = 0;
  for (int s = 1; s <= 6; ++s) {
    const double alpha = s - 1;
    for (int k = -6; k <= 6; ++k) {
      const MembershipResult m = quadrature_membership(k, alpha, default_disk(alpha));
      const bool in = m.verdict == Membership::converged;
      const bool out = m.verdict == Membership::diverged || m.verdict == Membership::marginal_divergent;
      ++total;
      if ((in || out) && in == (k >= 1 - s)) ++agree;
      if (k + s - 1 == -1) {
        ++marginal;
        if (m.verdict == Membership::marginal_divergent) ++marginal_ok;
      }
    }
  }
  r.pass = agree == total && total == 78 && marginal_ok == marginal;
  r.detail = std::to_string(agree) + "/" + std::to_string(total) + " agree with k >= 1-s, " +
             std::to_string(marginal_ok) + "/" + std::to_string(marginal) + " marginal cases divergent";
  return r;
}

CriterionResult criterion_6() {
  CriterionResult r;
  r.pass = true;
  using C = std::complex<double>;
  auto bump = [](C t) -> C {
    const double a = 1 - 4 * std::norm(t);
    return a > 0 ? a * a * a * a : 0.0;
  };
  auto bump_dbar = [](C t) -> C {
    const double a = 1 - 4 * std::norm(t);
    return a > 0 ? -16.0 * t * a * a * a : 0.0;
  };
  auto cbump = [&](C t) -> C { return std::conj(t) * bump(t); };
  auto cbump_dbar = [](C t) -> C {
    const double a = 1 - 4 * std::norm(t);
    return a > 0 ? a * a * a * a - 16 * std::norm(t) * a * a * a : 0.0;
  };
  auto error = [](int n, const std::function<C(C)>& u, const std::function<C(C)>& f) {
    const GridFunction ug = GridFunction::sample(n, u, 0.5);
    const GridFunction fg = GridFunction::sample(n, f, 0.5);
    return l2_distance(cauchy_transform(fg), ug) / l2_norm(ug);
  };
  std::ostringstream d;
  d.precision(3);
  const std::pair<std::function<C(C)>, std::function<C(C)>> pairs[] = {{bump, bump_dbar}, {cbump, cbump_dbar}};
  const char* names[] = {"bump", "conj(t)*bump"};
  for (int i = 0; i < 2; ++i) {
    const double e128 = error(128, pairs[i].first, pairs[i].second);
    const double e256 = error(256, pairs[i].first, pairs[i].second);
    r.pass = r.pass && e128 <= 1e-2 && e256 < e128;
    d << (i ? "; " : "") << names[i] << ": " << std::scientific << e128 << " (n=128), " << e256 << " (n=256)";
  }
  r.detail = d.str();
  return r;
}

CriterionResult criterion_7() {
  CriterionResult r;
  r.pass = true;
  std::ostringstream d;
  d.precision(6);
  double prev = INFINITY;
  for (int k = 1; k <= 3; ++k) {
    const CutoffNorm c = cutoff_norm(k, INFINITY);
    r.pass = r.pass && c.relative_difference <= 1e-2 && c.quadrature < prev;
    prev = c.quadrature;
    d << (k > 1 ? "; " : "") << "k=" << k << ": " << c.quadrature << " vs 2 pi e^-k = " << c.exact;
  }
  r.detail = d.str();
  return r;
}

CriterionResult criterion_8(std::uint64_t seed) {
  CriterionResult r;
  r.pass = true;
  std::vector<CurveSpec> specs;
  for (const auto& fc : fuzz_corpus(seed, 200)) specs.push_back(fc.spec);
  for (const char* eq : {"y^2*z - x^3", "y^2*z - x^3 - x^2*z", "y^3*z - x^4", "y^2*z^2 - x^4 - y^4", "x^3 + y^3 + z^3"}) {
    specs.push_back(from_plane_curve({{eq}}));
  }
  int tables = 0, failed = 0;
  for (const auto& spec : specs) {
    const CheckedCurve c = validate(spec);
    const auto thresholds = vanishing_thresholds(c);
    for (int j = 1; j <= 5; ++j) {
      LineBundleSpec l;
      for (const auto& [id, th] : thresholds) l.degrees[id] = th + j;
      const DimValue v = full_table(c, l).at(Extension::w, 0, 1);
      ++tables;
      if (!(v.is_exact() && v.lo == 0)) ++failed;
    }
  }
  r.pass = failed == 0;
  r.detail = std::to_string(specs.size()) + " specs, " + std::to_string(tables) + " bundles above threshold, " +
             std::to_string(failed) + " with h_w^{0,1} != 0";
  return r;
}

CriterionResult criterion_9() {
  CriterionResult r;
  r.pass = true;
  std::ostringstream d;
  for (int s = 2; s <= 6; ++s) {
    int weak = 0, strong = 0;
    for (const auto& g : local_table(s)) {
      if (g.label == "H_w^{0,0}") weak = g.k_min;
      if (g.label == "H_{s,w}^{0,0}") strong = g.k_min;
    }
    int gained = 0;
    for (int k = 1 - s; k <= -1; ++k) {
      if (monomial_in_L2(k, pullback_weight_exponent(0, 0, s)) && !monomial_in_L2(k, 0)) ++gained;
    }
    SingularPointSpec p{"p", {{"c", s}}, std::nullopt, std::nullopt};
    const int mp = mult_prime(p);
    r.pass = r.pass && gained == mp && strong - weak == mp && mp == s - 1;
    d << (s > 2 ? ", " : "") << "s=" << s << ": " << gained;
  }
  r.detail = "exponents gained = mult' (" + d.str() + ")";
  return r;
}

template <typename Fn>
CriterionResult timed(int id, const char* name, double budget, Fn&& fn) {
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.id = id;
  r.name = name;
  r.budget_seconds = budget;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget > 0 && r.seconds > budget) {
    r.pass = false;
    r.detail += "; over the time budget";
  }
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  // the corpus expansion is part of criterion 1's runtime
  std::vector<Expanded> corpus;
  out.push_back(timed(1, "Puiseux substitution oracle", 30, [&] {
    corpus = expand_corpus();
    return criterion_1(corpus);
  }));
  out.push_back(timed(2, "multiplicity chain", 0, [&] {
    if (corpus.empty()) throw MathError("corpus expansion failed");
    return criterion_2(corpus);
  }));
  out.push_back(timed(3, "Riemann-Roch and Serre duality identities", 10, [&] { return criterion_3(seed); }));
  out.push_back(timed(4, "worked tables", 0, criterion_4));
  out.push_back(timed(5, "local monomial thresholds", 60, criterion_5));
  out.push_back(timed(6, "Cauchy solver", 120, criterion_6));
  out.push_back(timed(7, "cut-off decay", 0, criterion_7));
  out.push_back(timed(8, "vanishing theorem consistency", 0, [&] { return criterion_8(seed); }));
  out.push_back(timed(9, "dimension witness", 0, criterion_9));
  return out;
}

}  // namespace curvel2
