// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Verification engines that share no code path with the solvers: the radial
// ODE residual, the spinor round-trip of the first-order pair, direct
// coefficient matching of the polynomial factor, and the degeneracy audit.
// Nothing here includes a solver header.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qes/closed_form.hpp"
#include "qes/errors.hpp"
#include "qes/normalize.hpp"
#include "qes/polynomial.hpp"
#include "qes/potential.hpp"

namespace qes {

inline constexpr double kResidualThreshold = 1e-6;
inline constexpr double kNegligibleTerm = 1e-30;

struct ResidualReport {
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  double worst_r = 0.0;
  double threshold = kResidualThreshold;
  bool pass = true;
  double grid_min = 0.0;
  double grid_max = 0.0;
  std::size_t grid_count = 0;
  std::string spacing = "log";
  std::size_t checked = 0;
  std::size_t skipped = 0;

  std::string grid_description() const {
    std::ostringstream os;
    os << grid_count << " " << spacing << "-spaced points on [" << grid_min << ", " << grid_max
       << "]";
    return os.str();
  }
};

/// F'' + [c0 - L/r^2 - coupling * V(r)] F = 0.
///
/// Dirac: c0 = E^2 - mu^2, L = kappa(kappa+1), coupling = 2(mu+E).
/// Schrodinger (2m = hbar = 1): c0 = E', L = ell(ell+1), coupling = 1.
struct RadialEquation {
  double L = 0.0;
  double c0 = 0.0;
  double coupling = 1.0;
  std::function<double(double)> potential;

  double effective(double r) const { return L / (r * r) + coupling * potential(r); }
};

inline RadialEquation dirac_equation(const PotentialSpec& spec, int kappa, double mu, double E) {
  if (!spec.complete())
    throw PreconditionError("all potential coefficients, including constrained ones, must be set");
  return RadialEquation{static_cast<double>(kappa) * (kappa + 1.0), E * E - mu * mu,
                        2.0 * (mu + E), [spec](double r) { return eval_potential(spec, r); }};
}

inline RadialEquation schrodinger_equation(const PotentialSpec& spec, double ell, double Eprime) {
  if (!spec.complete())
    throw PreconditionError("all potential coefficients, including constrained ones, must be set");
  return RadialEquation{ell * (ell + 1.0), Eprime, 1.0,
                        [spec](double r) { return eval_potential(spec, r); }};
}

namespace detail {

inline void finish(ResidualReport& rep, const std::vector<double>& grid, double threshold) {
  rep.threshold = threshold;
  rep.grid_count = grid.size();
  if (!grid.empty()) {
    rep.grid_min = grid.front();
    rep.grid_max = grid.back();
  }
  rep.pass = std::isfinite(rep.max_rel_residual) && rep.max_rel_residual <= threshold;
}

inline void accumulate(ResidualReport& rep, double r, double residual, double scale) {
  if (!(scale >= kNegligibleTerm)) {
    ++rep.skipped;
    return;
  }
  ++rep.checked;
  const double rel = std::abs(residual) / scale;
  rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(residual));
  if (!(rel <= rep.max_rel_residual)) {
    rep.max_rel_residual = std::isfinite(rel) ? std::max(rep.max_rel_residual, rel)
                                              : std::numeric_limits<double>::infinity();
    rep.worst_r = r;
  }
}

}  // namespace detail

/// Pointwise residual of a closed form against a radial equation, normalized
/// by max(|F''|, |V_eff F|).
inline ResidualReport ode_residual(const ClosedForm& f, const RadialEquation& eq,
                                   const std::vector<double>& grid,
                                   double threshold = kResidualThreshold) {
  ResidualReport rep;
  for (double r : grid) {
    const Jet F = f.jet(r);
    const double veff_f = eq.effective(r) * F.v;
    const double res = F.dd + eq.c0 * F.v - veff_f;
    const double scale = std::max({std::abs(F.dd), std::abs(veff_f)});
    detail::accumulate(rep, r, res, scale);
  }
  detail::finish(rep, grid, threshold);
  return rep;
}

inline ResidualReport ode_residual(const ClosedForm& f, const PotentialSpec& spec,
                                   const DiracState& state, double E,
                                   const std::vector<double>& grid = default_grid(),
                                   double threshold = kResidualThreshold) {
  return ode_residual(f, dirac_equation(spec, state.kappa, state.mu, E), grid, threshold);
}

inline ResidualReport ode_residual(const ClosedForm& f, const PotentialSpec& spec,
                                   const SchrodingerState& state, double Eprime,
                                   const std::vector<double>& grid = default_grid(),
                                   double threshold = kResidualThreshold) {
  return ode_residual(f, schrodinger_equation(spec, state.ell, Eprime), grid, threshold);
}

/// d/dr of samples on a log-uniform grid by the 10th-order central difference
/// in t = ln r. Entries within five points of either end are NaN.
inline std::vector<double> log_grid_derivative(const std::vector<double>& r,
                                               const std::vector<double>& f) {
  static constexpr double kCoeff[5] = {5.0 / 6.0, -5.0 / 21.0, 5.0 / 84.0, -5.0 / 504.0,
                                       1.0 / 1260.0};
  const std::size_t n = r.size();
  if (f.size() != n) throw PreconditionError("sample count does not match the grid");
  if (n < 11) throw PreconditionError("finite-difference check needs at least 11 points");
  const double h = std::log(r[1] / r[0]);
  for (std::size_t i = 1; i < n; ++i) {
    if (!(r[i] > 0.0)) throw PreconditionError("grid must be positive");
    const double hi = std::log(r[i] / r[i - 1]);
    if (std::abs(hi - h) > 1e-8 * std::abs(h))
      throw PreconditionError("spinor round-trip requires a log-uniform grid");
  }
  std::vector<double> d(n, std::nan(""));
  for (std::size_t i = 5; i + 5 < n; ++i) {
    double acc = 0.0;
    for (int k = 1; k <= 5; ++k) acc += kCoeff[k - 1] * (f[i + k] - f[i - k]);
    d[i] = acc / (h * r[i]);
  }
  return d;
}

/// Checks (d/dr - kappa/r) G = [mu - E + 2 V(r)] F on interior grid points,
/// normalized by the largest of |G'|, |kappa G / r| and the right-hand side.
inline ResidualReport spinor_roundtrip(const std::vector<double>& r, const std::vector<double>& F,
                                       const std::vector<double>& G, const PotentialSpec& spec,
                                       int kappa, double mu, double E,
                                       double threshold = kResidualThreshold) {
  if (F.size() != r.size() || G.size() != r.size())
    throw PreconditionError("F, G and grid must have the same length");
  const std::vector<double> dG = log_grid_derivative(r, G);
  ResidualReport rep;
  for (std::size_t i = 5; i + 5 < r.size(); ++i) {
    const double kg = kappa * G[i] / r[i];
    const double rhs = (mu - E + 2.0 * eval_potential(spec, r[i])) * F[i];
    const double res = dG[i] - kg - rhs;
    detail::accumulate(rep, r[i], res, std::max({std::abs(dG[i]), std::abs(kg), std::abs(rhs)}));
  }
  detail::finish(rep, r, threshold);
  rep.spacing = "log (interior, 10th-order differences)";
  return rep;
}

inline ResidualReport spinor_roundtrip(const WavefunctionGrid& wf, const PotentialSpec& spec,
                                       const DiracState& state, double E,
                                       double threshold = kResidualThreshold) {
  return spinor_roundtrip(wf.r, wf.F, wf.G, spec, state.kappa, state.mu, E, threshold);
}

// ---------------------------------------------------------------------------
// Coefficient matching.
//
// With x = r^{1/N} and F = x^s e^{w(x)} y(x), s = N(j+1), the radial equation
// times N^2 x^{2N-1} becomes
//
//   x y'' + P1 y' + P0 y = 0,
//   P1 = 2 x w' + 2s + 1 - N,
//   P0 = x (w'' + w'^2) + (2s + 1 - N) w' + N^2 c0 x^{2N-1}
//        - N^2 m sum_p sigma_p a_p x^{2N-1-p}.
//
// Degrees >= N of P0 vanish for the right exponent w, degree N-1 fixes the
// energy, and the low coefficients lambda_k = P0[k], k <= N-2, are unknowns
// solved together with y. Each lambda_k carries one constrained a_{2N-1-k}.
// ---------------------------------------------------------------------------

struct OracleProblem {
  int family = 2;            // N
  int degree = 0;            // n_r
  double j = 1.0;            // kappa or ell
  double c0 = 0.0;           // E^2 - mu^2 or E'
  double coupling = 1.0;     // 2(mu+E) or 1
  std::vector<double> free;  // a_1..a_N (magnitudes)
  poly::Coeffs exponent;     // w(x), ascending, w[0] ignored
};

struct OracleSolution {
  poly::Coeffs poly;                            // monic, ascending
  std::vector<double> lambda;                   // P0[0..N-2]
  std::vector<double> constrained;              // a_{N+1}..a_{2N-1}
  std::vector<std::complex<double>> roots;
  bool all_positive = false;
  double residual = 0.0;
};

struct OracleResult {
  std::vector<OracleSolution> solutions;
  double exponent_defect = 0.0;  // max |P0[k]|, k >= N, relative
  double energy_defect = 0.0;    // |P0[N-1] + 2 N b_N n|, relative
};

namespace detail {

inline int sigma(int p, int family) {
  if (p > family) return +1;
  return (p % 2 == 1) ? -1 : +1;
}

/// P0 without the constrained coefficients, degrees 0..2N-1.
inline std::vector<double> base_p0(const OracleProblem& pb) {
  const int N = pb.family;
  const double s = N * (pb.j + 1.0);
  poly::Coeffs w = pb.exponent;
  w.resize(N + 1, 0.0);
  const poly::Coeffs w1 = poly::derivative(w);
  const poly::Coeffs w2 = poly::derivative(w1);
  std::vector<double> p0(2 * N, 0.0);
  const poly::Coeffs w1sq = poly::multiply(w1, w1);
  for (std::size_t k = 0; k < w2.size(); ++k)
    if (k + 1 < p0.size()) p0[k + 1] += w2[k];
  for (std::size_t k = 0; k < w1sq.size(); ++k)
    if (k + 1 < p0.size()) p0[k + 1] += w1sq[k];
  for (std::size_t k = 0; k < w1.size() && k < p0.size(); ++k) p0[k] += (2 * s + 1 - N) * w1[k];
  p0[2 * N - 1] += N * N * pb.c0;
  for (int p = 1; p <= N; ++p)
    p0[2 * N - 1 - p] -= N * N * pb.coupling * sigma(p, N) * pb.free.at(p - 1);
  return p0;
}

/// Columns: image of x^j (j = 0..n) under x D^2 + P1 D + P0[N-1] x^{N-1},
/// rows: degrees 0..n+N-2 (the top degree is the energy condition).
inline Eigen::MatrixXd operator_matrix(const OracleProblem& pb, const std::vector<double>& p0) {
  const int N = pb.family;
  const int n = pb.degree;
  const double s = N * (pb.j + 1.0);
  poly::Coeffs w = pb.exponent;
  w.resize(N + 1, 0.0);
  const poly::Coeffs w1 = poly::derivative(w);
  poly::Coeffs p1(N + 1, 0.0);
  for (std::size_t k = 0; k < w1.size(); ++k) p1[k + 1] += 2.0 * w1[k];
  p1[0] += 2 * s + 1 - N;
  const int rows = n + N - 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, n + 1);
  for (int jj = 0; jj <= n; ++jj) {
    auto add = [&](int deg, double v) {
      if (deg >= 0 && deg < rows) M(deg, jj) += v;
    };
    if (jj >= 1) {
      add(jj - 1, static_cast<double>(jj) * (jj - 1));
      for (int k = 0; k <= N; ++k) add(jj - 1 + k, jj * p1[k]);
    }
    add(jj + N - 1, p0[N - 1]);
  }
  return M;
}

inline Eigen::VectorXd system_residual(const Eigen::MatrixXd& M, const Eigen::VectorXd& c,
                                       const Eigen::VectorXd& lambda) {
  Eigen::VectorXd r = M * c;
  for (int m = 0; m < lambda.size(); ++m)
    for (int j = 0; j < c.size(); ++j)
      if (j + m < r.size()) r(j + m) += lambda(m) * c(j);
  return r;
}

/// Newton on (c_0..c_{n-1}, lambda) with c_n = 1.
inline bool newton_polish(const Eigen::MatrixXd& M, Eigen::VectorXd& c, Eigen::VectorXd& lambda,
                          double& residual) {
  const int n = static_cast<int>(c.size()) - 1;
  const int nl = static_cast<int>(lambda.size());
  const int rows = static_cast<int>(M.rows());
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  Eigen::VectorXd r = system_residual(M, c, lambda);
  residual = r.cwiseAbs().maxCoeff() / (scale * std::max(1.0, c.cwiseAbs().maxCoeff()));
  for (int it = 0; it < 100; ++it) {
    if (!std::isfinite(residual)) return false;
    if (residual <= 1e-14) return true;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, n + nl);
    for (int j = 0; j < n; ++j) {
      J.col(j) = M.col(j);
      for (int m = 0; m < nl; ++m)
        if (j + m < rows) J(j + m, j) += lambda(m);
    }
    for (int m = 0; m < nl; ++m)
      for (int j = 0; j <= n; ++j)
        if (j + m < rows) J(j + m, n + m) += c(j);
    const Eigen::VectorXd d = J.fullPivLu().solve(-r);
    if (!d.allFinite()) return false;
    double step = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      Eigen::VectorXd c2 = c;
      Eigen::VectorXd l2 = lambda;
      c2.head(n) += step * d.head(n);
      l2 += step * d.tail(nl);
      const Eigen::VectorXd r2 = system_residual(M, c2, l2);
      const double res2 =
          r2.cwiseAbs().maxCoeff() / (scale * std::max(1.0, c2.cwiseAbs().maxCoeff()));
      if (std::isfinite(res2) && res2 < residual) {
        c = c2;
        lambda = l2;
        r = r2;
        residual = res2;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return residual <= 1e-11;
}

inline OracleSolution finish_solution(const OracleProblem& pb, const std::vector<double>& p0,
                                      const Eigen::VectorXd& c, const Eigen::VectorXd& lambda,
                                      double residual) {
  const int N = pb.family;
  OracleSolution sol;
  sol.poly.assign(c.data(), c.data() + c.size());
  sol.lambda.assign(lambda.data(), lambda.data() + lambda.size());
  sol.residual = residual;
  sol.constrained.assign(N - 1, 0.0);
  for (int m = 0; m <= N - 2; ++m) {
    const int q = 2 * N - 1 - m;
    sol.constrained[q - N - 1] = (p0[m] - lambda(m)) / (N * N * pb.coupling);
  }
  sol.roots = poly::roots(sol.poly);
  sol.all_positive = true;
  for (const auto& z : sol.roots)
    if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z)) || !(z.real() > 0.0))
      sol.all_positive = false;
  return sol;
}

inline bool same_solution(const OracleSolution& a, const OracleSolution& b) {
  for (std::size_t i = 0; i < a.lambda.size(); ++i)
    if (std::abs(a.lambda[i] - b.lambda[i]) > 1e-7 * (1.0 + std::abs(a.lambda[i]))) return false;
  for (std::size_t i = 0; i < a.poly.size(); ++i)
    if (std::abs(a.poly[i] - b.poly[i]) > 1e-7 * (1.0 + std::abs(a.poly[i]))) return false;
  return true;
}

}  // namespace detail

/// Solves the coefficient-matching system for every polynomial factor of the
/// requested degree that the numerics can reach. N = 1 and N = 2 are linear
/// eigenproblems and return all solutions; N = 3 is a bilinear system solved
/// by multistart Newton.
inline OracleResult coefficient_oracle(const OracleProblem& pb) {
  const int N = pb.family;
  const int n = pb.degree;
  if (N < 1 || N > 3) throw DomainError("coefficient oracle supports N = 1, 2, 3");
  if (n < 0) throw DomainError("polynomial degree must be non-negative");
  if (static_cast<int>(pb.free.size()) != N) throw DomainError("expected N free coefficients");
  if (static_cast<int>(pb.exponent.size()) > N + 1) throw DomainError("exponent degree exceeds N");

  OracleResult out;
  const std::vector<double> p0 = detail::base_p0(pb);
  double mag = 0.0;
  for (double v : p0) mag = std::max(mag, std::abs(v));
  mag = std::max(mag, 1.0);
  for (int k = N; k < 2 * N; ++k) out.exponent_defect = std::max(out.exponent_defect, std::abs(p0[k]) / mag);
  const double bN = pb.exponent.size() > static_cast<std::size_t>(N) ? pb.exponent[N] : 0.0;
  out.energy_defect = std::abs(p0[N - 1] + 2.0 * N * bN * n) / mag;

  const Eigen::MatrixXd M = detail::operator_matrix(pb, p0);
  const int nl = N - 1;

  if (n == 0 || nl == 0) {
    // y = 1: lambda_m = -M(m, 0); N = 1 has no lambda and y is fixed by rows
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    c(n) = 1.0;
    Eigen::VectorXd lambda(nl);
    if (n == 0) {
      for (int m = 0; m < nl; ++m) lambda(m) = -M(m, 0);
    } else {
      // N = 1: triangular recurrence from the top
      for (int k = n - 1; k >= 0; --k) {
        double acc = 0.0;
        for (int j = k + 1; j <= n; ++j) acc += M(k, j) * c(j);
        if (std::abs(M(k, k)) < 1e-300) throw OracleFailure("singular coefficient recurrence");
        c(k) = -acc / M(k, k);
      }
    }
    const Eigen::VectorXd r = detail::system_residual(M, c, lambda);
    const double res = r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
    out.solutions.push_back(detail::finish_solution(pb, p0, c, lambda, res));
    return out;
  }

  auto record = [&](Eigen::VectorXd c, Eigen::VectorXd lambda) {
    double res = 0.0;
    if (!detail::newton_polish(M, c, lambda, res)) return;
    OracleSolution sol = detail::finish_solution(pb, p0, c, lambda, res);
    for (const auto& s : out.solutions)
      if (detail::same_solution(s, sol)) return;
    out.solutions.push_back(std::move(sol));
  };

  if (N == 2) {
    // (M + lambda_0 I) c = 0 with M square
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success) throw OracleFailure("eigen decomposition failed");
    for (int i = 0; i <= n; ++i) {
      const auto ev = es.eigenvalues()(i);
      if (std::abs(ev.imag()) > 1e-8 * (1.0 + std::abs(ev))) continue;
      Eigen::VectorXd v = es.eigenvectors().col(i).real();
      if (std::abs(v(n)) < 1e-14 * v.cwiseAbs().maxCoeff()) continue;
      v /= v(n);
      Eigen::VectorXd lambda(1);
      lambda(0) = -ev.real();
      record(v, lambda);
    }
  } else {
    // seeds: monic polynomials with geometrically spread positive roots
    for (double centre = 0.2; centre <= 20.0; centre *= 1.25) {
      for (double ratio : {1.15, 1.5, 2.2, 3.5}) {
        std::vector<double> rts(n);
        for (int i = 0; i < n; ++i) rts[i] = centre * std::pow(ratio, i - 0.5 * (n - 1));
        const poly::Coeffs seed = poly::from_roots(rts);
        Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(seed.data(), n + 1);
        // least-squares lambda for this seed
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M.rows(), nl);
        for (int m = 0; m < nl; ++m)
          for (int j = 0; j <= n; ++j)
            if (j + m < M.rows()) A(j + m, m) = c(j);
        const Eigen::VectorXd lambda = A.colPivHouseholderQr().solve(-(M * c));
        record(c, lambda);
      }
    }
  }
  if (out.solutions.empty()) throw OracleFailure("coefficient matching produced no solution");
  return out;
}

/// The unique solution whose polynomial has only positive real roots.
/// Throws OracleFailure when there is none; picks the smallest root sum when
/// several exist.
inline const OracleSolution& positive_solution(const OracleResult& res) {
  const OracleSolution* best = nullptr;
  double best_sum = std::numeric_limits<double>::infinity();
  for (const auto& s : res.solutions) {
    if (!s.all_positive) continue;
    double sum = 0.0;
    for (const auto& z : s.roots) sum += z.real();
    if (sum < best_sum) {
      best_sum = sum;
      best = &s;
    }
  }
  if (!best) throw OracleFailure("no coefficient-matching solution with positive real roots");
  return *best;
}

inline int count_positive_solutions(const OracleResult& res) {
  return static_cast<int>(std::count_if(res.solutions.begin(), res.solutions.end(),
                                        [](const OracleSolution& s) { return s.all_positive; }));
}

/// Sorted real parts of the roots of a solution.
inline std::vector<double> solution_roots(const OracleSolution& s) {
  std::vector<double> out;
  for (const auto& z : s.roots) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

struct DegeneracyViolation {
  int n_r = 0;
  int kappa = 0;
  double upper = 0.0;  // E(n_r, kappa+1)
  double lower = 0.0;  // E(n_r+N, kappa)
  double difference = 0.0;
  std::string note;
};

/// Compares E(n_r, kappa+1) with E(n_r+N, kappa) for n_r <= max_nr and
/// 1 <= kappa <= max_kappa. `energy(n_r, kappa)` returns the admissible
/// energies of a state (possibly none).
template <class EnergyFn>
std::vector<DegeneracyViolation> degeneracy_audit(int family, int max_nr, int max_kappa,
                                                  EnergyFn&& energy, double tol = 1e-10) {
  std::vector<DegeneracyViolation> out;
  for (int nr = 0; nr <= max_nr; ++nr) {
    for (int k = 1; k <= max_kappa; ++k) {
      const std::vector<double> a = energy(nr, k + 1);
      const std::vector<double> b = energy(nr + family, k);
      if (a.size() != b.size()) {
        out.push_back({nr, k, a.empty() ? NAN : a.front(), b.empty() ? NAN : b.front(), NAN,
                       "different number of admissible energies"});
        continue;
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (!(d <= tol)) out.push_back({nr, k, a[i], b[i], d, "energies differ"});
      }
    }
  }
  return out;
}

}  // namespace qes
