#include "kcut/angle_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kcut/rng.hpp"

namespace kcut {

namespace {

constexpr double kRootTolerance = 1e-6;   // on ||z| - 1|
constexpr double kDegenerateG0 = 1e-12;   // relative to |g_0|+|g_1|+|g_2|
constexpr int kBisectionSteps = 80;

double total_magnitude(const std::array<Complex, 3> &g) {
  return std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]);
}

// Unit-circle solution of F''(z) = f with the largest F'', if any.
std::optional<Complex> level_set_point(const std::array<Complex, 3> &g, double f,
                                       double tol) {
  const auto coeffs = level_set_quartic(g, f);
  std::optional<Complex> best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (Complex z : polynomial_roots(coeffs)) {
    const double radius = std::abs(z);
    if (std::abs(radius - 1.0) >= kRootTolerance)
      continue;
    const Complex on_circle = z / radius;
    const double value = f_double_prime(g, on_circle);
    if (std::abs(value - f) < tol && value > best_value) {
      best_value = value;
      best = on_circle;
    }
  }
  return best;
}

// Golden-section polish of theta_0 around a bisection result. F'' is smooth
// near an interior maximum except where g_1 + conj(g_2) z vanishes, and
// golden section only needs unimodality.
Complex polish(const std::array<Complex, 3> &g, Complex z) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double center = std::arg(z);
  double a = center - 1e-3, b = center + 1e-3;
  auto value = [&](double t) { return f_double_prime(g, std::polar(1.0, t)); };
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = value(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = value(x1);
    }
  }
  const Complex candidate = std::polar(1.0, 0.5 * (a + b));
  return f_double_prime(g, candidate) > f_double_prime(g, z) ? candidate : z;
}

BetaMaximum finish(const std::array<Complex, 3> &g, Complex z, int iterations) {
  BetaMaximum out;
  out.z = z;
  out.value = f_double_prime(g, z);
  out.iterations = iterations;
  const double theta0 = std::arg(z);
  const Complex w = g[1] + std::conj(g[2]) * z;
  const double theta1 = std::abs(w) > 0.0 ? -std::arg(w) : 0.0;
  const double theta2 = -theta0 - theta1;
  // theta_a = 3 beta_a - sum(beta) with the gauge sum(beta) = 0.
  out.beta = {theta0 / 3.0, theta1 / 3.0, theta2 / 3.0};
  return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return out;
}

// Best index by energy; earlier (smaller gamma) wins ties.
std::size_t best_index(const std::vector<GridPoint> &points, std::size_t begin,
                       std::size_t end) {
  std::size_t best = begin;
  for (std::size_t i = begin + 1; i < end; ++i)
    if (points[i].energy > points[best].energy)
      best = i;
  return best;
}

template <class Evaluate>
OptimizeResult grid_search(const OptimizerOptions &opts, Evaluate &&evaluate) {
  if (opts.grid_points < 2)
    throw std::invalid_argument("optimize: need at least two grid points");
  OptimizeResult result;
  const auto coarse = linspace(0.0, opts.gamma_max, opts.grid_points);
  for (double gamma : coarse)
    result.trace.push_back(evaluate(gamma));
  const std::size_t s = best_index(result.trace, 0, coarse.size());

  const double lo = coarse[s == 0 ? 0 : s - 1];
  const double hi = coarse[std::min(s + 1, coarse.size() - 1)];
  for (double gamma : linspace(lo, hi, opts.grid_points))
    result.trace.push_back(evaluate(gamma));

  // Overall best; among equal energies the smallest gamma.
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    const auto &p = result.trace[i];
    const auto &q = result.trace[best];
    if (p.energy > q.energy || (p.energy == q.energy && p.gamma < q.gamma))
      best = i;
  }
  result.angles = {result.trace[best].beta, result.trace[best].gamma};
  result.energy = result.trace[best].energy;
  return result;
}

} // namespace

GCoefficients g_coefficients(std::span<const PairDensity> densities,
                             const FourierTables &tables, double offset) {
  if (tables.k != 3)
    throw UnsupportedError("g_coefficients: analytic beta optimization requires k = 3");
  GCoefficients gc;
  gc.c_const = offset;
  for (const auto &pd : densities) {
    const auto h = tables.h_oriented(pd.pair.first, pd.pair.second);
    if (h.empty())
      continue;
    const CMatrix rho = to_phi_basis(pd.rho);
    auto at = [&](int p, int q, int pp, int qq) {
      return rho(mod_k(p, 3) * 3 + mod_k(q, 3), mod_k(pp, 3) * 3 + mod_k(qq, 3));
    };
    Complex constant = 0.0;
    for (int a = 0; a < 3; ++a) {
      constant += h[1] * at(a, a + 1, a + 1, a);
      gc.g[a] += 2.0 * (h[1] * at(a, a, a + 1, a - 1) +
                        std::conj(h[1]) * at(a, a, a - 1, a + 1));
    }
    gc.c_const += h[0].real() + 2.0 * constant.real();
  }
  return gc;
}

GCoefficients g_coefficients(const CostHamiltonian &H, double gamma, Exec exec) {
  if (H.k() != 3)
    throw UnsupportedError("g_coefficients: analytic beta optimization requires k = 3");
  const FourierTables tables = fourier_tables(H);
  const auto densities = pair_densities(H, tables, gamma, exec);
  return g_coefficients(densities, tables, H.offset());
}

double f_double_prime(const std::array<Complex, 3> &g, Complex z) {
  return (g[0] * z).real() + std::abs(g[1] + std::conj(g[2]) * z);
}

std::array<Complex, 5> level_set_quartic(const std::array<Complex, 3> &g, double f) {
  const Complex g0 = g[0], g1 = g[1], g2 = g[2];
  return {
      -std::conj(g0) * std::conj(g0) / 4.0,
      g1 * g2 + f * std::conj(g0),
      std::norm(g1) + std::norm(g2) - f * f - 0.5 * std::norm(g0),
      std::conj(g1) * std::conj(g2) + f * g0,
      -g0 * g0 / 4.0,
  };
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  double largest = 0.0;
  for (Complex c : coeffs)
    largest = std::max(largest, std::abs(c));
  if (largest == 0.0)
    return {};
  std::size_t degree = coeffs.size();
  while (degree > 0 && std::abs(coeffs[degree - 1]) <= 1e-14 * largest)
    --degree;
  if (degree <= 1)
    return {};
  --degree;

  CMatrix companion = CMatrix::Zero(degree, degree);
  const Complex lead = coeffs[degree];
  for (std::size_t i = 1; i < degree; ++i)
    companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < degree; ++i)
    companion(i, degree - 1) = -coeffs[i] / lead;

  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("polynomial_roots: eigenvalue iteration did not converge");
  const auto &values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

BetaMaximum maximize_beta(const GCoefficients &gc, double tol) {
  const auto &g = gc.g;
  const double scale = total_magnitude(g);
  if (!std::isfinite(scale))
    throw NumericalError("maximize_beta: non-finite coefficients");
  if (scale == 0.0)
    return finish(g, Complex(1.0, 0.0), 0);

  if (std::abs(g[0]) <= kDegenerateG0 * scale) {
    // F'' ~ |g_1 + conj(g_2) z|, maximal when conj(g_2) z is aligned with g_1.
    Complex z(1.0, 0.0);
    if (std::abs(g[1]) > 0.0 && std::abs(g[2]) > 0.0)
      z = std::polar(1.0, std::arg(g[1]) + std::arg(g[2]));
    return finish(g, z, 0);
  }

  if (std::abs(g[1]) + std::abs(g[2]) <= kDegenerateG0 * scale)
    return finish(g, std::conj(g[0]) / std::abs(g[0]), 0);

  // Lower end: best of a few probe points (attained, hence feasible),
  // including the point that maximizes the g_0 term alone.
  Complex best_z(1.0, 0.0);
  for (Complex probe : {Complex(-1.0, 0.0), Complex(0.0, 1.0), Complex(0.0, -1.0),
                        std::conj(g[0]) / std::abs(g[0])})
    if (f_double_prime(g, probe) > f_double_prime(g, best_z))
      best_z = probe;
  double lo = f_double_prime(g, best_z);
  double hi = scale;
  if (!(lo <= hi + 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "maximize_beta: bracket [" << lo << ", " << hi << "] is inverted";
    throw NumericalError(msg.str());
  }

  const double level_tol = tol * std::max(1.0, scale);
  int iterations = 0;
  for (; iterations < kBisectionSteps && hi - lo > 1e-12 * scale; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    if (auto z = level_set_point(g, mid, level_tol)) {
      lo = mid;
      if (f_double_prime(g, *z) > f_double_prime(g, best_z))
        best_z = *z;
    } else {
      hi = mid;
    }
  }
  return finish(g, polish(g, best_z), iterations);
}

OptimizeResult optimize(const CostHamiltonian &H, const OptimizerOptions &opts) {
  if (H.k() != 3)
    throw UnsupportedError("optimize: the analytic optimizer requires k = 3");
  const FourierTables tables = fourier_tables(H);
  return grid_search(opts, [&](double gamma) {
    const auto densities = pair_densities(H, tables, gamma, opts.exec);
    const GCoefficients gc = g_coefficients(densities, tables, H.offset());
    const BetaMaximum bm = maximize_beta(gc);
    return GridPoint{gamma, gc.c_const + bm.value, {bm.beta.begin(), bm.beta.end()}};
  });
}

OptimizeResult optimize_heuristic(const CostHamiltonian &H, const OptimizerOptions &opts) {
  const int k = H.k();
  const FourierTables tables = fourier_tables(H);
  int gamma_index = 0;
  auto result = grid_search(opts, [&](double gamma) {
    const auto densities = pair_densities(H, tables, gamma, opts.exec);
    const BetaLandscape landscape(densities, tables, H.offset());
    Rng rng(derive_seed(opts.seed, {static_cast<std::uint64_t>(gamma_index++)}));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

    std::vector<double> best_beta(k, 0.0);
    double best = landscape(best_beta);
    for (int restart = 0; restart <= opts.restarts; ++restart) {
      // beta_0 = 0 fixes the global phase.
      std::vector<double> beta(k, 0.0);
      if (restart > 0)
        for (int a = 1; a < k; ++a)
          beta[a] = angle(rng);
      double value = landscape(beta);
      for (double step = 0.5; step > 1e-8;) {
        bool improved = false;
        for (int a = 1; a < k; ++a)
          for (double sign : {1.0, -1.0}) {
            beta[a] += sign * step;
            const double trial = landscape(beta);
            if (trial > value) {
              value = trial;
              improved = true;
            } else {
              beta[a] -= sign * step;
            }
          }
        if (!improved)
          step *= 0.5;
      }
      if (value > best) {
        best = value;
        best_beta = beta;
      }
    }
    return GridPoint{gamma, best, best_beta};
  });
  result.heuristic = true;
  return result;
}

OptimizeResult optimize_angles(const CostHamiltonian &H, const OptimizerOptions &opts) {
  return H.k() == 3 ? optimize(H, opts) : optimize_heuristic(H, opts);
}

BetaLandscape::BetaLandscape(const CostHamiltonian &H, double gamma, Exec exec)
    : BetaLandscape(pair_densities(H, fourier_tables(H), gamma, exec), fourier_tables(H),
                    H.offset()) {}

BetaLandscape::BetaLandscape(std::span<const PairDensity> densities,
                             const FourierTables &tables, double offset)
    : k_(tables.k), offset_(offset), tensor_(tables.k * tables.k * tables.k) {
  const int k = k_;
  for (const auto &pd : densities) {
    const auto h = tables.h_oriented(pd.pair.first, pd.pair.second);
    if (h.empty())
      continue;
    const CMatrix rho = to_phi_basis(pd.rho);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c)
          tensor_[(a * k + b) * k + c] +=
              h[c] * rho(a * k + b, mod_k(a + c, k) * k + mod_k(b - c, k));
  }
}

double BetaLandscape::operator()(std::span<const double> beta) const {
  const int k = k_;
  if (static_cast<int>(beta.size()) != k)
    throw std::invalid_argument("BetaLandscape: beta must have k entries");
  std::vector<Complex> phase(k);
  for (int a = 0; a < k; ++a)
    phase[a] = std::polar(1.0, beta[a]);
  Complex total = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        total += tensor_[(a * k + b) * k + c] * phase[a] * phase[b] *
                 std::conj(phase[mod_k(a + c, k)] * phase[mod_k(b - c, k)]);
  return offset_ + total.real();
}

} // namespace kcut
