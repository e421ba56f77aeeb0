#include "curvel2/local_analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

#include "curvel2/errors.hpp"

namespace curvel2 {

int pullback_weight_exponent(int p, int q, int s) {
  if (p < 0 || p > 1 || q < 0 || q > 1) throw InputError("bidegree must have p, q in {0, 1}");
  if (s < 1) throw InputError("multiplicity must be at least 1");
  return (1 - p - q) * (s - 1);
}

bool monomial_in_L2(int k, double alpha) { return k + alpha > -1; }

WeightedDisk default_disk(double alpha) {
  WeightedDisk d;
  d.alpha = alpha;
  for (int e = 1; e <= 8; ++e) d.radii.push_back(std::pow(10.0, -e));
  return d;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::converged:
      return "converged";
    case Membership::marginal_divergent:
      return "marginal-divergent";
    case Membership::diverged:
      return "diverged";
    case Membership::inconclusive:
      break;
  }
  return "inconclusive";
}

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

GaussRule gauss_legendre(int m) {
  GaussRule r;
  r.x.resize(static_cast<std::size_t>(m));
  r.w.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[static_cast<std::size_t>(i)] = z;
    r.w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
  }
  return r;
}

const GaussRule& rule10() {
  static const GaussRule r = gauss_legendre(10);
  return r;
}

struct Panel {
  double a, b;
  int segment;
};

}  // namespace

MembershipResult quadrature_membership(int k, double alpha, const WeightedDisk& disk, Exec exec) {
  if (disk.radii.size() < 3) throw InputError("weighted disk needs at least three radii");
  for (std::size_t i = 0; i < disk.radii.size(); ++i) {
    const double r = disk.radii[i];
    if (!(r > 0 && r < 1) || (i > 0 && !(r < disk.radii[i - 1]))) {
      throw InputError("weighted disk radii must decrease strictly inside (0, 1)");
    }
  }
  // In x = log(1/rho) the annulus integral is 2 pi * int exp(-gamma x) dx.
  const double gamma = 2.0 * k + 2.0 * alpha + 2.0;
  std::vector<Panel> panels;
  double prev = 0;
  for (std::size_t i = 0; i < disk.radii.size(); ++i) {
    const double x1 = -std::log(disk.radii[i]);
    const int count = std::max(1, static_cast<int>(std::ceil((x1 - prev) * disk.panels_per_unit)));
    for (int p = 0; p < count; ++p) {
      panels.push_back({prev + (x1 - prev) * p / count, prev + (x1 - prev) * (p + 1) / count, static_cast<int>(i)});
    }
    prev = x1;
  }
  const GaussRule& g = rule10();
  std::vector<double> value(panels.size());
  const long np = static_cast<long>(panels.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (long i = 0; i < np; ++i) {
    const Panel& pn = panels[static_cast<std::size_t>(i)];
    const double mid = 0.5 * (pn.a + pn.b);
    const double half = 0.5 * (pn.b - pn.a);
    double s = 0;
    for (std::size_t q = 0; q < g.x.size(); ++q) s += g.w[q] * std::exp(-gamma * (mid + half * g.x[q]));
    value[static_cast<std::size_t>(i)] = 2 * kPi * half * s;
  }
  std::vector<double> increments(disk.radii.size(), 0.0);
  for (std::size_t i = 0; i < panels.size(); ++i) increments[static_cast<std::size_t>(panels[i].segment)] += value[i];

  MembershipResult res;
  double acc = 0;
  for (double inc : increments) {
    acc += inc;
    res.integrals.push_back(acc);
  }
  // Fit log increments (beyond the first annulus) against the midpoint in x.
  std::vector<double> xs, ys;
  double lo = -std::log(disk.radii[0]);
  for (std::size_t i = 1; i < disk.radii.size(); ++i) {
    const double hi = -std::log(disk.radii[i]);
    const double width = hi - lo;
    if (increments[i] > 0 && std::isfinite(increments[i])) {
      xs.push_back(0.5 * (lo + hi));
      ys.push_back(std::log(increments[i] / width));
    }
    lo = hi;
  }
  if (xs.size() < 2) {
    // the increments underflowed: the integral stopped growing long ago
    res.verdict = Membership::converged;
    res.slope = -gamma;
    return res;
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - res.slope * sx) / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    res.fit_residual = std::max(res.fit_residual, std::abs(ys[i] - icept - res.slope * xs[i]));
  }
  // The increment over an annulus of width w behaves like
  // exp(-gamma x) sinh(gamma w / 2) / (gamma / 2), so its log is linear in x
  // with slope -gamma; a flat profile is the logarithmic divergence.
  const double s = res.slope;
  if (res.fit_residual > 0.05 * std::max(1.0, std::abs(s))) {
    res.verdict = Membership::inconclusive;
  } else if (std::abs(s) < 0.25) {
    res.verdict = Membership::marginal_divergent;
  } else if (s <= -0.75) {
    res.verdict = Membership::converged;
  } else if (s >= 0.75) {
    res.verdict = Membership::diverged;
  } else {
    res.verdict = Membership::inconclusive;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Grid functions and the Cauchy transform

GridFunction GridFunction::sample(int n, const std::function<std::complex<double>(std::complex<double>)>& fn,
                                  double support_radius) {
  if (n < 16) throw InputError("grid size must be at least 16");
  GridFunction f;
  f.n = n;
  f.support_radius = support_radius;
  f.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::complex<double> t(f.coord(i), f.coord(j));
      if (std::abs(t) < 1) f.at(i, j) = fn(t);
    }
  }
  return f;
}

double l2_norm(const GridFunction& f) {
  double s = 0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s) * f.h();
}

double l2_distance(const GridFunction& a, const GridFunction& b) {
  if (a.n != b.n) throw InputError("grid sizes differ");
  double s = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(s) * a.h();
}

namespace {

// Mixed antiderivatives of x / r^2 and y / r^2.
double anti_g(double x, double y) { return 0.5 * y * std::log(x * x + y * y) - y + x * std::atan(y / x); }
double anti_h(double x, double y) { return 0.5 * x * std::log(x * x + y * y) - x + y * std::atan(x / y); }

// (1/pi) times the integral of 1/z over the square of side h centred at (cx, cy).
std::complex<double> kernel_cell(double cx, double cy, double h) {
  if (cx == 0 && cy == 0) return 0;
  const double x1 = cx - h / 2, x2 = cx + h / 2, y1 = cy - h / 2, y2 = cy + h / 2;
  auto rect = [&](double (*F)(double, double)) { return F(x2, y2) - F(x1, y2) - F(x2, y1) + F(x1, y1); };
  return std::complex<double>(rect(anti_g), -rect(anti_h)) / kPi;
}

void check_support(const GridFunction& f) {
  if (f.n < 16 || f.values.size() != static_cast<std::size_t>(f.n) * f.n) throw InputError("malformed grid function");
  const double limit = 1 - 2 * f.h();
  for (int j = 0; j < f.n; ++j) {
    for (int i = 0; i < f.n; ++i) {
      if (f.at(i, j) != 0.0 && std::hypot(f.coord(i), f.coord(j)) > limit) {
        throw InputError("support violation: f must vanish within two cells of the unit circle");
      }
    }
  }
}

void mask_to_disk(GridFunction& u) {
  for (int j = 0; j < u.n; ++j) {
    for (int i = 0; i < u.n; ++i) {
      if (std::hypot(u.coord(i), u.coord(j)) >= 1) u.at(i, j) = 0;
    }
  }
}

// Kernel values for offsets in [-(n-1), n-1]^2, row-major with side 2n-1.
std::vector<std::complex<double>> kernel_table(int n, double h, Exec exec) {
  const int side = 2 * n - 1;
  std::vector<std::complex<double>> k(static_cast<std::size_t>(side) * side);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int dj = 0; dj < side; ++dj) {
    for (int di = 0; di < side; ++di) {
      k[static_cast<std::size_t>(dj) * side + di] = kernel_cell((di - (n - 1)) * h, (dj - (n - 1)) * h, h);
    }
  }
  return k;
}

}  // namespace

GridFunction cauchy_transform(const GridFunction& f, Exec exec) {
  check_support(f);
  const int n = f.n;
  const int big = 2 * n;
  const std::size_t total = static_cast<std::size_t>(big) * big;
  const std::vector<std::complex<double>> table = kernel_table(n, f.h(), exec);
  const int side = 2 * n - 1;

  auto* kb = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  auto* fb = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  fftw_plan pk = fftw_plan_dft_2d(big, big, kb, kb, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan pf = fftw_plan_dft_2d(big, big, fb, fb, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan pb = fftw_plan_dft_2d(big, big, fb, fb, FFTW_BACKWARD, FFTW_ESTIMATE);
  std::memset(kb, 0, sizeof(fftw_complex) * total);
  std::memset(fb, 0, sizeof(fftw_complex) * total);

  // offsets wrap modulo 2n; the range -(n-1)..(n-1) does not alias
  for (int dj = 0; dj < side; ++dj) {
    const int row = (dj - (n - 1) + big) % big;
    for (int di = 0; di < side; ++di) {
      const int col = (di - (n - 1) + big) % big;
      const auto& v = table[static_cast<std::size_t>(dj) * side + di];
      kb[static_cast<std::size_t>(row) * big + col][0] = v.real();
      kb[static_cast<std::size_t>(row) * big + col][1] = v.imag();
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      fb[static_cast<std::size_t>(j) * big + i][0] = f.at(i, j).real();
      fb[static_cast<std::size_t>(j) * big + i][1] = f.at(i, j).imag();
    }
  }
  fftw_execute(pk);
  fftw_execute(pf);
  const long tl = static_cast<long>(total);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (long i = 0; i < tl; ++i) {
    const std::complex<double> a(kb[i][0], kb[i][1]);
    const std::complex<double> b(fb[i][0], fb[i][1]);
    const std::complex<double> c = a * b;
    fb[i][0] = c.real();
    fb[i][1] = c.imag();
  }
  fftw_execute(pb);

  GridFunction u;
  u.n = n;
  u.support_radius = 1;
  u.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  const double scale = 1.0 / static_cast<double>(total);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const auto& v = fb[static_cast<std::size_t>(j) * big + i];
      u.at(i, j) = std::complex<double>(v[0], v[1]) * scale;
    }
  }
  fftw_destroy_plan(pk);
  fftw_destroy_plan(pf);
  fftw_destroy_plan(pb);
  fftw_free(kb);
  fftw_free(fb);
  mask_to_disk(u);
  return u;
}

GridFunction cauchy_transform_direct(const GridFunction& f, Exec exec) {
  check_support(f);
  const int n = f.n;
  const int side = 2 * n - 1;
  const std::vector<std::complex<double>> table = kernel_table(n, f.h(), exec);
  std::vector<int> support;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (f.at(i, j) != 0.0) support.push_back(j * n + i);
    }
  }
  GridFunction u;
  u.n = n;
  u.support_radius = 1;
  u.values.assign(static_cast<std::size_t>(n) * n, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      std::complex<double> s = 0;
      for (int idx : support) {
        const int bi = idx % n, bj = idx / n;
        s += f.values[static_cast<std::size_t>(idx)] *
             table[static_cast<std::size_t>(j - bj + n - 1) * side + (i - bi + n - 1)];
      }
      u.at(i, j) = s;
    }
  }
  mask_to_disk(u);
  return u;
}

DbarResidual verify_dbar_solution(const GridFunction& u, const GridFunction& f) {
  if (u.n != f.n || u.values.size() != f.values.size()) throw InputError("grids do not match");
  const int n = u.n;
  const double h = u.h();
  const double limit = 1 - 2 * h;
  double num = 0, den = 0;
  for (int j = 1; j < n - 1; ++j) {
    for (int i = 1; i < n - 1; ++i) {
      if (std::hypot(u.coord(i), u.coord(j)) > limit) continue;
      const std::complex<double> dx = (u.at(i + 1, j) - u.at(i - 1, j)) / (2 * h);
      const std::complex<double> dy = (u.at(i, j + 1) - u.at(i, j - 1)) / (2 * h);
      const std::complex<double> d = 0.5 * (dx + std::complex<double>(0, 1) * dy);
      num += std::norm(d - f.at(i, j));
      den += std::norm(f.at(i, j));
    }
  }
  DbarResidual r;
  if (den == 0) {
    r.absolute = true;
    r.value = std::sqrt(num) * h;
  } else {
    r.value = std::sqrt(num / den);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cut-off norms

CutoffNorm cutoff_norm(int k, double tolerance, Exec exec) {
  if (k < 1) throw InputError("cutoff_norm: k must be at least 1");
  CutoffNorm c;
  c.k = k;
  c.exact = 2 * kPi * std::exp(-static_cast<double>(k));
  // u = log log(1/rho) runs from k (rho = eps_k) to infinity; the tail beyond
  // k + 40 is below exp(-40) relative.
  const int intervals = 4000;
  const double a = k, b = k + 40.0;
  const double step = (b - a) / intervals;
  std::vector<double> f(static_cast<std::size_t>(intervals) + 1);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int i = 0; i <= intervals; ++i) {
    const double u = a + i * step;
    const double log_rho = -std::exp(u);
    // 2 pi rho * (rho log rho)^-2 * |d rho / du| with |d rho / du| = rho e^u.
    // rho underflows, so its powers are collected first: 1 - 2 + 1 = 0.
    const int rho_power = 1 - 2 + 1;
    const double log_value = std::log(2 * kPi) + rho_power * log_rho - 2 * std::log(-log_rho) + u;
    f[static_cast<std::size_t>(i)] = std::exp(log_value);
  }
  double s = f.front() + f.back();
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4 : 2) * f[static_cast<std::size_t>(i)];
  c.quadrature = s * step / 3;
  c.relative_difference = std::abs(c.quadrature - c.exact) / c.exact;
  if (c.relative_difference > tolerance) {
    throw MathError("cut-off norm quadrature disagrees with the closed form for k = " + std::to_string(k));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Binary grid files

namespace {

template <typename T>
void put(std::ofstream& out, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), 8);
}

template <typename T>
T get(std::ifstream& in, const std::string& path) {
  std::uint64_t bits;
  if (!in.read(reinterpret_cast<char*>(&bits), 8)) throw InputError("grid file '" + path + "' is truncated");
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_grid(const std::string& path, const GridFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.n));
  put<double>(out, f.support_radius);
  for (const auto& v : f.values) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
}

GridFunction read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  const auto n = get<std::uint64_t>(in, path);
  if (n < 16 || n > 4096) throw InputError("grid file '" + path + "': unsupported size " + std::to_string(n));
  GridFunction f;
  f.n = static_cast<int>(n);
  f.support_radius = get<double>(in, path);
  f.values.resize(static_cast<std::size_t>(n) * n);
  for (auto& v : f.values) {
    const double re = get<double>(in, path);
    const double im = get<double>(in, path);
    v = {re, im};
  }
  char extra;
  if (in.read(&extra, 1)) throw InputError("grid file '" + path + "' has trailing data");
  return f;
}

}  // namespace curvel2
