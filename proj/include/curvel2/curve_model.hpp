#pragma once

// Global model of a compact singular curve: the components of the
// normalization with their genera, the singular points with the
// multiplicities of their branches, and line bundles given by the degrees of
// their pullbacks on each component.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvel2/puiseux.hpp"

namespace curvel2 {

struct ComponentSpec {
  std::string id;
  int genus = 0;
  /// "declared" when stated in a spec file, "plane_curve" when computed.
  std::string genus_source = "declared";
};

struct BranchSpec {
  std::string component;
  int s = 1;  // multiplicity of the branch
};

struct SingularPointSpec {
  std::string id;
  std::vector<BranchSpec> branches;
  std::optional<int> delta;  // recorded by plane-curve ingestion
  std::optional<int> eta;    // conductor exponent, user supplied or computed
};

struct CurveSpec {
  std::vector<ComponentSpec> components;
  std::vector<SingularPointSpec> singular_points;
  std::optional<std::string> provenance;
};

/// A validated spec with its derived quantities.
struct CheckedCurve {
  CurveSpec spec;
  int m = 0;  // number of components
  int g = 0;  // sum of the component genera
  int deg_z_minus_absz = 0;
  std::map<std::string, int> genus_of;
  std::map<std::string, int> correction_of;  // deg(Z - |Z|) restricted to each component
};

/// Every violated invariant, in a stable order (empty if valid).
std::vector<std::string> validation_errors(const CurveSpec& spec);
/// Throws ValidationError listing all violations.
CheckedCurve validate(const CurveSpec& spec);

/// mult' of one point: sum over its branches of (s - 1).
int mult_prime(const SingularPointSpec& p);
int deg_Z_minus_absZ(const CheckedCurve& c);
std::map<std::string, int> deg_Z_minus_absZ_per_component(const CheckedCurve& c);

struct LineBundleSpec {
  std::map<std::string, int> degrees;  // missing components have degree 0
  /// The bundle is known to be trivial (so each pullback divisor is principal).
  bool trivial = false;
};

LineBundleSpec trivial_bundle();
/// Degrees per component; throws InputError for unknown component ids.
int bundle_degree(const CheckedCurve& c, const LineBundleSpec& l);
int degree_on(const LineBundleSpec& l, const std::string& component);
/// L^{-1}
LineBundleSpec dual(const LineBundleSpec& l);

CurveSpec curve_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CurveSpec& spec);
LineBundleSpec line_bundle_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LineBundleSpec& l);

/// Reads a file; throws InputError if it cannot be read or parsed.
std::string read_text_file(const std::string& path);
nlohmann::json parse_json_text(const std::string& text, const std::string& what);

// ---------------------------------------------------------------------------
// Plane curves

/// Homogeneous equations in x, y, z (one per component, or a single
/// equation); affine equations in x, y are homogenized with z.
struct PlaneCurveInput {
  std::vector<std::string> factors;
};

/// Parses either a JSON object {"equation": str} / {"factors": [str, ...]}
/// or a bare equation.
PlaneCurveInput plane_curve_from_text(const std::string& text);

struct BranchReport {
  std::string component;
  int s = 1;             // ramification index of the parametrization
  int multiplicity = 1;  // min(s, ord w)
  long count = 1;
  std::string series;
};

struct PointReport {
  std::vector<std::string> ids;  // one per conjugate
  std::string x, y;              // coordinates in the working chart
  std::vector<std::pair<std::string, std::string>> tower;
  SingularityInvariants invariants;
  std::vector<BranchReport> branches;
};

struct PlaneCurveAnalysis {
  CurveSpec spec;
  std::vector<int> degrees;  // per component
  std::vector<PointReport> points;
  std::string chart;  // the projective coordinate change that was applied
};

/// Finds all singular points exactly, expands each component's branches
/// there, and computes component genera by the degree-genus formula with
/// delta corrections. `truncation` 0 selects the default with doubling.
PlaneCurveAnalysis analyze_plane_curve(const PlaneCurveInput& input, int truncation = 0);
CurveSpec from_plane_curve(const PlaneCurveInput& input, int truncation = 0);

/// Largest absolute degree of an extension field the ingestion will build.
constexpr int kMaxExtensionDegree = 48;

}  // namespace curvel2
