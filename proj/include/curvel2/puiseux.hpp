#pragma once

// Newton-Puiseux expansion of plane curve germs at the origin and the
// singularity invariants derived from it.
//
// Coordinates are (z, w); a branch is parametrized as (t^s, w(t)). Conjugate
// branches (images of one another under field automorphisms over the base
// field) are returned once, with `count` recording how many geometric
// branches the representative stands for.

#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "curvel2/bipoly.hpp"
#include "curvel2/errors.hpp"
#include "curvel2/series.hpp"

namespace curvel2 {

struct NewtonEdge {
  mpq_class slope;            // delta(z-exponent) / delta(w-exponent), positive
  std::vector<Exp2> points;   // support points on the edge, by increasing z-exponent
  int lattice_length = 0;     // gcd of the edge's coordinate differences
  int height() const { return points.front().second - points.back().second; }
};

struct NewtonPolygon {
  std::vector<NewtonEdge> edges;  // slopes strictly increasing
};

/// Lower-left convex hull edges of the support, from (0, n) with
/// n = ord_w f(0, w) down to the lowest w-exponent. Throws InputError if
/// f(0,0) != 0 or if z divides f.
NewtonPolygon newton_polygon(const BivariatePoly& f);
NewtonPolygon newton_polygon_of_support(const std::vector<Exp2>& support);

/// Z = z - shear*w and, for tangent-aligned branches, V = w' - tilt*Z where
/// w' is the sheared w coordinate.
struct CoordinateChange {
  AlgebraicNumber shear;
  AlgebraicNumber tilt;
};

struct PuiseuxBranch {
  int s = 1;
  Series series;  // w(t), known modulo t^truncation
  int truncation = 0;
  bool tangent_aligned = false;
  long count = 1;
  CoordinateChange change;
  /// Local equation after the shear (shared by all branches of one expansion).
  std::shared_ptr<const KPoly2> equation;

  const FieldPtr& field() const { return series.field(); }
  /// ord_t w(t); equals the truncation if w vanishes to that order.
  int order() const { return series.order(); }
  /// min(s, ord_t w)
  int multiplicity() const;
  /// The series in the sheared coordinates (tilt undone).
  Series untilted_series() const;
  /// Equation in the coordinates the series is expressed in.
  KPoly2 local_equation() const;
  /// f(t^s, w(t)) in the branch coordinates.
  Series substitution_residual() const;
  /// Nonzero coefficients c_k of w(t) = sum c_k t^k, k < truncation.
  std::vector<std::pair<int, AlgebraicNumber>> coefficients() const;
};

/// 4 * deg_w f * deg_z f, but at least 8.
int default_truncation(int degree_z, int degree_w);
/// Upper bound for the doubling loop: CURVE_L2_TRUNCATION_CAP, default 512.
int truncation_cap();

/// Expansion of a germ at the origin over the field of `f`. Requires
/// f(0,0) = 0 and f squarefree. Without tangent alignment z must not divide f;
/// with it a shear z -> z + lambda*w removes a vertical tangent first.
std::vector<PuiseuxBranch> puiseux_expand(const KPoly2& f, int truncation, bool tangent_aligned = false);
/// Rational input; also checks squarefreeness.
std::vector<PuiseuxBranch> puiseux_expand(const BivariatePoly& f, int truncation, bool tangent_aligned = false);

int multiplicity_initial_form(const BivariatePoly& f);
int multiplicity_branches(const std::vector<PuiseuxBranch>& branches);
int mult_prime(const std::vector<PuiseuxBranch>& branches);

/// ord_t of g along the branch, i.e. ord_t g(t^s, w(t)), with g in the
/// branch's sheared coordinates. Throws TruncationError if undetermined.
int order_along(const KPoly2& g, const PuiseuxBranch& b);
int intersection_multiplicity(const PuiseuxBranch& b1, const PuiseuxBranch& b2);
/// sum m(m-1)/2 over the infinitely near points of one branch.
int branch_delta(const PuiseuxBranch& b);
int delta_invariant(const std::vector<PuiseuxBranch>& branches);
/// 2 * delta for a unibranch germ; InputError for several branches.
int conductor_exponent(const PuiseuxBranch& b);

struct SingularityInvariants {
  int multiplicity = 0;
  int mult_prime = 0;
  int delta = 0;
  int branch_count = 0;
  std::optional<int> conductor;
  int truncation = 0;  // truncation order that resolved the computation
};

SingularityInvariants singularity_invariants(const KPoly2& f, int truncation);

/// Runs fn(N) for N = n0, 2 n0, ... while it throws TruncationError, up to
/// truncation_cap().
template <class Fn>
auto with_truncation_retry(int n0, Fn&& fn) -> decltype(fn(n0)) {
  const int cap = truncation_cap();
  int n = n0;
  while (true) {
    try {
      return fn(n);
    } catch (const TruncationError&) {
      if (n >= cap) throw;
      n = std::min(2 * n, cap);
    }
  }
}

/// Invariants with automatic doubling of the truncation order starting from
/// `truncation` (default_truncation when 0).
SingularityInvariants singularity_invariants(const BivariatePoly& f, int truncation = 0);

}  // namespace curvel2
