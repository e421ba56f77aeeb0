#pragma once

// The acceptance suite: nine pass/fail criteria over fixed corpora and a
// seeded random corpus of curve specs.

#include <cstdint>
#include <string>
#include <vector>

#include "curvel2/curve_model.hpp"

namespace curvel2 {

struct CorpusGerm {
  std::string name;
  std::string equation;  // in z, w
};

/// Plane curve germs at the origin covering the standard simple and
/// non-simple singularities and some reducible combinations.
const std::vector<CorpusGerm>& singularity_corpus();

struct FuzzCase {
  CurveSpec spec;
  LineBundleSpec bundle;
};

constexpr std::uint64_t kDefaultSeed = 20240601;

/// m <= 3, genera <= 5, at most 4 singular points, branch multiplicities
/// <= 5, bundle degrees in [-10, 10].
std::vector<FuzzCase> fuzz_corpus(std::uint64_t seed, int count = 200);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;  // 0 when the criterion has no time limit
};

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed);

}  // namespace curvel2
