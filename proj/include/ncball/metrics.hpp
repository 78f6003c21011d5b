// metrics.hpp: the hyperbolic metric delta, the Harnack gauge omega, the
// kernel metric d_H, Harnack domination certificates and a variational
// lower-bound sampler. Every truncated quantity is reported as a certified
// enclosure [lower, upper]: lower endpoints come from exact finite corners
// (monotone in the truncation level), upper endpoints from graded component
// sums closed off with rigorous geometric tails.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ncball/fock.hpp"
#include "ncball/tuples.hpp"

namespace ncball {

struct MetricOptions {
  double tol = 1e-6;          // requested enclosure width
  int m_max = 14;             // truncation ladder ceiling
  int m_fixed = 0;            // > 0: evaluate at exactly this level
  double cert_tol = 1e-10;    // relative positivity slack for certificates
  double strict_tol = 1e-8;   // margin defining "strictly inside"
  double safety = 2.0;        // multiplier on extrapolated kernel tails
  std::vector<double> r_grid = {0.5, 0.9, 0.99};
  int kmax = 200;             // graded components summed explicitly
  std::uint64_t seed = 0;
  int trials = 50;
};

struct Enclosure {
  double lower = 0.0;
  double upper = 0.0;
  int m_used = 0;
  bool converged = false;

  double mid() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

// Outcome of testing A ≺ B with constant c across the (r, m) probe grid.
// A refutation carries a unit witness v with <(c^2 K_B - K_A) v, v> < 0,
// re-checkable by direct quadratic-form evaluation; domination is a
// necessary-condition certificate over the probed grid only.
struct HarnackCertificate {
  bool dominated = true;
  double c = 1.0;
  int m = 0;       // refutation site, or the deepest level probed
  double r = 0.0;  // refutation radius, or the largest radius probed
  std::vector<double> r_grid;
  ComplexVector witness;   // empty unless refuted
  double quad_form = 0.0;  // <(c^2 K_B - K_A) v, v> at the witness
};

HarnackCertificate harnack_dominated(const OperatorTuple& A,
                                     const OperatorTuple& B, double c,
                                     const MetricOptions& opts = {});

// Harnack gauge omega(A,B) = inf{c : A ≺ B and B ≺ A with constant c} >= 1.
// Strict open-ball pairs use the corner norm of C_A C_B^{-1} (plus the exact
// circle-symbol route when the pair spans a single direction); pairs at row
// norm one with joint spectral radius < 1 use the sup over scaled copies on
// an increasing radius grid, converged only if the grid stabilizes.
Enclosure omega(const OperatorTuple& A, const OperatorTuple& B,
                const MetricOptions& opts = {});

// delta = ln omega, endpoints mapped monotonically; convergence is judged on
// the log scale.
Enclosure delta(const OperatorTuple& A, const OperatorTuple& B,
                const MetricOptions& opts = {});

// d_H(A,B) = |P(A,R) - P(B,R)|, the kernel metric.
Enclosure kernel_metric(const OperatorTuple& A, const OperatorTuple& B,
                        const MetricOptions& opts = {});

// sqrt of the largest two-sided pencil eigenvalue of the level-m Poisson
// corners at radius r: the best Harnack constant visible at this resolution.
// Nondecreasing in both m and r, and always a lower bound for omega(A,B).
double omega_at_level(const OperatorTuple& A, const OperatorTuple& B, int m,
                      double r);

// |K_m(A,r) - K_m(B,r)|: the kernel metric seen at one resolution, again
// nondecreasing in m and r and a lower bound for d_H at radius r.
double kernel_metric_at_level(const OperatorTuple& A, const OperatorTuple& B,
                              int m, double r);

// A positive free pluriharmonic polynomial with matrix coefficients,
// u(X) = I + sum_{1<=|w|<=m} (X_w^* (x) C_w + X_w (x) C_w^*), obtained by
// compressing the level-m Poisson kernel with a random isometry V:
// C_w = V^* Append_w V. Positivity on the closed ball is inherited from the
// kernel, and u(0) = I.
struct PluriharmonicSample {
  int n = 0;
  int m = 0;
  Eigen::Index out_dim = 0;
  ComplexMatrix V;  // dim(Fock_m) x out_dim isometry
  std::vector<std::pair<Word, ComplexMatrix>> coeffs;

  ComplexMatrix eval(const OperatorTuple& X) const;
};

PluriharmonicSample sample_positive_pluriharmonic(int n, int m,
                                                  Eigen::Index out_dim,
                                                  std::uint64_t seed);

// Best value of (1/2)|ln <u(A)x,x> / <u(B)x,x>| over sampled positive
// pluriharmonic u and pencil eigenvectors x; a guaranteed lower bound on
// delta(A,B).
double delta_lower_bound_sample(const OperatorTuple& A, const OperatorTuple& B,
                                int trials, std::uint64_t seed);

}  // namespace ncball
