#pragma once

// Dimensions of the L2-Dolbeault cohomology of the regular part of a compact
// singular curve with values in a line bundle, for the weak and the strong
// closed extension of dbar, computed from Riemann-Roch on the normalization.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvel2/curve_model.hpp"

namespace curvel2 {

/// A dimension, possibly only known up to an interval.
struct DimValue {
  long lo = 0;
  long hi = 0;
  /// The value depends on the divisor class (not only on its degree).
  bool class_dependent = false;

  static DimValue exact(long v) { return {v, v, false}; }
  bool is_exact() const { return lo == hi; }
  std::string to_string() const;
  friend DimValue operator+(const DimValue& a, const DimValue& b) {
    return {a.lo + b.lo, a.hi + b.hi, a.class_dependent || b.class_dependent};
  }
  friend bool operator==(const DimValue& a, const DimValue& b) {
    return a.lo == b.lo && a.hi == b.hi && a.class_dependent == b.class_dependent;
  }
};

enum class Mode { exact, generic };

/// What is known about the divisor class beyond its degree.
enum class DivisorClass { unknown, trivial, effective };

struct RRValue {
  DimValue h0, h1;
};

/// h^0 and h^1 of a degree d divisor on a compact Riemann surface of genus g.
/// In the special range 0 <= d <= 2g-2 the exact mode returns the interval
/// between the Riemann-Roch lower bound and the Clifford bound; the generic
/// mode returns the value for a general divisor class.
RRValue rr_on_component(int g, int d, Mode mode = Mode::exact, DivisorClass cls = DivisorClass::unknown);

enum class Extension { w, s };

struct CohomologyTable {
  // entries[ext][p][q]
  DimValue entries[2][2][2] = {};
  Mode mode = Mode::exact;
  int m = 0;
  int g = 0;
  int degree = 0;      // deg L
  int correction = 0;  // deg (Z - |Z|)

  const DimValue& at(Extension e, int p, int q) const { return entries[static_cast<int>(e)][p][q]; }
  DimValue& at(Extension e, int p, int q) { return entries[static_cast<int>(e)][p][q]; }
  bool has_class_dependence() const;
};

CohomologyTable full_table(const CheckedCurve& c, const LineBundleSpec& l, Mode mode = Mode::exact);

struct IdentityCheck {
  std::string name;
  std::string lhs;  // instantiated left side with its value
  std::string rhs;
  bool pass = false;
};

std::vector<IdentityCheck> check_rr_w(const CohomologyTable& t);
std::vector<IdentityCheck> check_rr_s(const CohomologyTable& t);
/// Compares the table of L with the table of the dual bundle entry-wise.
std::vector<IdentityCheck> check_serre_duality(const CheckedCurve& c, const LineBundleSpec& l, Mode mode = Mode::exact);

/// 2g - 2 - sum of mult' for an irreducible curve; throws InputError if m != 1.
int vanishing_threshold(const CheckedCurve& c);
/// The same bound for each component separately.
std::map<std::string, int> vanishing_thresholds(const CheckedCurve& c);

/// 2g + k + sum of the conductor exponents over the k singular points.
/// Every point must be unibranch; eta comes from `eta` or the spec.
int ample_degree_bound(const CheckedCurve& c, const std::map<std::string, int>& eta = {});

/// One local L2 cohomology group at a unibranch singular point of
/// multiplicity s, as a monomial filtration in the normalizing parameter t.
struct LocalGroup {
  std::string label;  // e.g. "H_w^{0,0}", "H_{s,w}^{1,0}"
  int p = 0, q = 0;
  bool zero = false;
  int k_min = 0;  // basis t^k (p = 0) or t^k dt (p = 1) for k >= k_min
  std::string basis() const;
};

/// All sixteen groups H_e^{p,q} for e in {w, s, (s,w), (w,s)}; throws
/// InputError for s < 1.
std::vector<LocalGroup> local_table(int s);

nlohmann::json to_json(const DimValue& v);
nlohmann::json to_json(const CohomologyTable& t);
nlohmann::json to_json(const IdentityCheck& c);
nlohmann::json to_json(const LocalGroup& g);

std::string entry_name(Extension e, int p, int q);

}  // namespace curvel2
