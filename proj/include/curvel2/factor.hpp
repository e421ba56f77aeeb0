#pragma once

// Exact univariate factorization over Q (Zassenhaus: Berlekamp modulo a small
// prime, Hensel lifting, subset recombination) and over towers of number
// fields (Trager's norm method, recursing down the tower).

#include <string>
#include <vector>

#include <gmpxx.h>

#include "curvel2/upoly.hpp"

namespace curvel2 {

struct PolyFactor {
  UPoly poly;  // monic, irreducible over poly.field()
  int multiplicity = 1;
};

/// Complete factorization of a nonzero polynomial over its coefficient field
/// into monic irreducibles; constant factors are dropped. The order is
/// deterministic (by degree, then by printed form).
std::vector<PolyFactor> factor(const UPoly& f);

/// Squarefree decomposition (Yun): monic a_i with f = lc * prod a_i^i.
std::vector<PolyFactor> squarefree_decomposition(const UPoly& f);

/// Irreducible factors of a primitive squarefree integer polynomial of
/// positive degree (coefficients lowest first).
std::vector<std::vector<mpz_class>> factor_squarefree_integer(const std::vector<mpz_class>& f);

/// Extends `base` by a root of `minpoly`, after verifying by exact
/// factorization that it is irreducible over `base`. Throws MathError naming
/// the polynomial otherwise.
FieldPtr adjoin_root(const FieldPtr& base, const UPoly& minpoly, const std::string& name);

/// A root of `p` in its own field if p has a linear factor, else nullopt-like
/// behaviour is signalled by returning false.
bool find_rational_root(const UPoly& p, AlgebraicNumber& root);

}  // namespace curvel2
