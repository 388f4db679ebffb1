#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "diamond/linalg.hpp"
#include "diamond/model.hpp"
#include "diamond/units.hpp"

namespace fixtures {

using diamond::cplx;

inline cplx edge(double mag_hz, double phase = std::numbers::pi / 4) {
  return std::polar(diamond::angular(mag_hz), phase);
}

/// Unoptimized device: |g|=|h|=|k|=1 MHz, |f|=10 MHz, phases pi/4,
/// gamma=300 kHz, Q1=2000, Q2=1000.
inline diamond::DiamondParams unoptimized() {
  diamond::DiamondParams p;
  p.omega = diamond::angular(1e9);
  p.Omega = diamond::angular(2e9);
  p.g = edge(1e6);
  p.h = edge(1e6);
  p.f = edge(1e7);
  p.k = edge(1e6);
  p.gamma = diamond::angular(3e5);
  p.Gamma1 = diamond::linewidth_from_q(p.omega, 2000);
  p.Gamma2 = diamond::linewidth_from_q(p.Omega, 1000);
  return p;
}

/// Optimized intrinsic point: Q1=51.286, Q2=1e4, gamma=10 MHz.
inline diamond::DiamondParams optimized() {
  auto p = unoptimized();
  p.gamma = diamond::angular(1e7);
  p.Gamma1 = diamond::linewidth_from_q(p.omega, 51.286);
  p.Gamma2 = diamond::linewidth_from_q(p.Omega, 1e4);
  return p;
}

inline diamond::ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double diagonal_boost) {
  std::normal_distribution<double> dist;
  std::vector<cplx> e(n * n);
  for (auto& v : e) v = {dist(rng), dist(rng)};
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] += diagonal_boost;
  return diamond::ComplexMatrix(n, n, std::move(e));
}

/// Solves A x = b by Gaussian elimination with full (row and column)
/// pivoting. Deliberately shares no code with the library's LU.
inline std::vector<cplx> solve_full_pivot(const diamond::ComplexMatrix& m, std::vector<cplx> b) {
  const std::size_t n = m.rows();
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c);
  std::vector<std::size_t> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t c = k; c < n; ++c)
        if (std::abs(a[r][c]) > std::abs(a[pr][pc])) pr = r, pc = c;
    std::swap(a[k], a[pr]);
    std::swap(b[k], b[pr]);
    if (pc != k) {
      for (auto& row : a) std::swap(row[k], row[pc]);
      std::swap(col[k], col[pc]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const cplx factor = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= factor * a[k][c];
      b[r] -= factor * b[k];
    }
  }
  std::vector<cplx> y(n);
  for (std::size_t k = n; k-- > 0;) {
    cplx s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a[k][c] * y[c];
    y[k] = s / a[k][k];
  }
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[col[i]] = y[i];
  return x;
}

/// Inverse assembled column by column from solve_full_pivot.
inline diamond::ComplexMatrix inverse_oracle(const diamond::ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<cplx> out(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<cplx> e(n);
    e[c] = 1.0;
    const auto x = solve_full_pivot(m, e);
    for (std::size_t r = 0; r < n; ++r) out[r * n + c] = x[r];
  }
  return diamond::ComplexMatrix(n, n, std::move(out));
}

/// Closed-form S for the 2N x 2N scattering of one decoupled mode.
inline cplx single_mode_reflection(double w, double resonance, double linewidth, bool standard) {
  const cplx term = linewidth / cplx(-linewidth / 2.0, w - resonance);
  return standard ? 1.0 + term : 1.0 - term;
}

}  // namespace fixtures
