#pragma once

// Numerical checks of the local weighted-disk theory at a unibranch
// singular point: L2 membership of monomials under the pulled-back volume,
// a Cauchy-transform solver for dbar on the unit disk, and the cut-off norms.
//
// Kernels come in a parallel (OpenMP) and a serial flavour of the same loop;
// partial sums are reduced in a fixed order, so both give identical bits.

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace curvel2 {

enum class Exec { serial, parallel };

/// alpha = (1-p-q)(s-1): a (p,q)-form f is L2 near the point iff t^alpha pi^*f
/// is L2 on the disk.
int pullback_weight_exponent(int p, int q, int s);

/// Whether t^k is square integrable for the measure |t|^{2 alpha} dV on the
/// unit disk, i.e. k + alpha > -1.
bool monomial_in_L2(int k, double alpha);

struct WeightedDisk {
  double alpha = 0;
  /// Strictly decreasing inner radii in (0, 1).
  std::vector<double> radii;
  /// Gauss-Legendre panels per unit of log(1/r).
  int panels_per_unit = 4;
};

/// Radii 10^-1, ..., 10^-8.
WeightedDisk default_disk(double alpha);

enum class Membership { converged, marginal_divergent, diverged, inconclusive };
std::string to_string(Membership m);

struct MembershipResult {
  Membership verdict = Membership::inconclusive;
  std::vector<double> integrals;  // I(r) for each radius
  /// Slope of log(I(r_{i+1}) - I(r_i)) against log(1/r).
  double slope = 0;
  /// Largest deviation of the log increments from the fitted line.
  double fit_residual = 0;
};

/// I(r) = integral of |t|^{2k+2 alpha} over r < |t| < 1 by quadrature,
/// classified by the growth of I(r) as r -> 0.
MembershipResult quadrature_membership(int k, double alpha, const WeightedDisk& disk, Exec exec = Exec::parallel);

/// Complex samples at the cell centres of a uniform n x n grid on [-1,1]^2.
/// Index j*n + i holds the value at (x_i, y_j), x_i = -1 + (i + 1/2) h.
struct GridFunction {
  int n = 0;
  /// Radius of a disk containing the support (recorded in the file header).
  double support_radius = 1;
  std::vector<std::complex<double>> values;

  double h() const { return 2.0 / n; }
  double coord(int i) const { return -1.0 + (i + 0.5) * h(); }
  std::complex<double>& at(int i, int j) { return values[static_cast<std::size_t>(j) * n + i]; }
  const std::complex<double>& at(int i, int j) const { return values[static_cast<std::size_t>(j) * n + i]; }

  /// Samples fn at the cell centres inside the unit disk, zero outside.
  static GridFunction sample(int n, const std::function<std::complex<double>(std::complex<double>)>& fn,
                             double support_radius = 1);
};

/// l2 norm with the cell area as weight.
double l2_norm(const GridFunction& f);
double l2_distance(const GridFunction& a, const GridFunction& b);

/// u(t) = (1/pi) sum over cells of f(zeta) times the exact integral of
/// 1/(t - zeta) over the cell, computed as an FFT convolution.  The result
/// solves dbar u = f.  Throws InputError unless the support of f keeps two
/// cells away from the unit circle.
GridFunction cauchy_transform(const GridFunction& f, Exec exec = Exec::parallel);
/// The same sum evaluated directly in O(n^4); reference for the FFT path.
GridFunction cauchy_transform_direct(const GridFunction& f, Exec exec = Exec::serial);

struct DbarResidual {
  double value = 0;
  /// f vanished, so value is the absolute rather than the relative residual.
  bool absolute = false;
};

/// ||D u - f|| / ||f|| over interior cells, D the centred-difference
/// d/dtbar = (d/dx + i d/dy) / 2.
DbarResidual verify_dbar_solution(const GridFunction& u, const GridFunction& f);

struct CutoffNorm {
  int k = 0;
  double exact = 0;       // 2 pi exp(-k)
  double quadrature = 0;  // in the variable u = log log(1/rho)
  double relative_difference = 0;
};

/// The integral of (|t| log|t|)^-2 over |t| < eps_k = exp(-exp(k)).
/// Throws MathError if the two evaluations differ by more than `tolerance`.
CutoffNorm cutoff_norm(int k, double tolerance = 1e-2, Exec exec = Exec::parallel);

/// Flat binary format: uint64 n, float64 support radius, then n*n pairs of
/// float64 (re, im), row-major, all little-endian.
void write_grid(const std::string& path, const GridFunction& f);
GridFunction read_grid(const std::string& path);

}  // namespace curvel2
