#pragma once

// Sparse multivariate polynomials with rational coefficients, and the text
// format used on the command line and in input files:
//   terms c*z^i*w^j joined by + and -, coefficients p/q; parentheses and
//   integer powers of parenthesised groups are accepted as a convenience.

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace curvel2 {

/// Exponent vector -> coefficient; no zero coefficients are stored.
using SparsePoly = std::map<std::vector<int>, mpq_class>;

/// Parses `text` over the given variables. Throws InputError on syntax
/// errors or unknown variable names.
SparsePoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

/// Canonical rendering (descending lexicographic exponent order).
std::string format_polynomial(const SparsePoly& p, const std::vector<std::string>& vars);

SparsePoly sparse_add(const SparsePoly& a, const SparsePoly& b);
SparsePoly sparse_mul(const SparsePoly& a, const SparsePoly& b);
SparsePoly sparse_scale(const SparsePoly& a, const mpq_class& c);

/// Variables (in order of `vars`) that actually occur in the text; useful to
/// sniff whether an equation is affine or homogeneous.
std::vector<std::string> variables_in(const std::string& text, const std::vector<std::string>& vars);

}  // namespace curvel2
