// freeholo.hpp: free polynomial maps with matrix coefficients. Evaluation on
// operator tuples and on truncated creation operators, one-sided sup-norm
// estimation, contractive normalization with a stabilization diagnostic, and
// the Schwarz-Pick verifier for the hyperbolic metric.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ncball/fock.hpp"
#include "ncball/linalg.hpp"
#include "ncball/metrics.hpp"
#include "ncball/tuples.hpp"

namespace ncball {

// F(X)_j = sum_alpha kron(X_alpha, coeffs[(j, alpha)]) with monomials
// X_alpha = X_{i_1} ... X_{i_k}. Components are 0-based, word letters
// 1-based, coefficients e x e, finitely supported.
struct FreePolyMap {
  int n_in = 0;
  int q_out = 0;
  int e = 0;
  std::map<std::pair<int, Word>, ComplexMatrix> coeffs;
};

// Largest word length carrying a nonzero coefficient; 0 for the zero map.
int degree(const FreePolyMap& F);

// Exact finite sum; the result has q_out components of dimension d * e.
OperatorTuple eval(const FreePolyMap& F, const OperatorTuple& X);

// The n truncated left creation operators as an operator tuple.
OperatorTuple left_creation_tuple(int n, int m);

// Row norm of [F_1(S), ..., F_q(S)] on the truncation ladder m-2, m-1, m.
// Each rung is an exact compression, so the values increase toward the true
// sup norm from below; value is the final rung.
struct SupNormEstimate {
  double value = 0.0;
  std::vector<double> ladder;
};

SupNormEstimate sup_norm_estimate(const FreePolyMap& F, int m);

// Coefficients rescaled by (1 - margin) / sup_norm_estimate(F, m).value.
// The estimate is one-sided, so contractivity of the result is certified
// only when the full ladder is present, covers the degree, and has spread
// at most 1e-6; otherwise unverified_contractivity is set.
struct ContractiveNormalization {
  FreePolyMap map;
  double estimate = 0.0;
  std::vector<double> ladder;
  bool unverified_contractivity = true;
};

ContractiveNormalization normalize_contractive(const FreePolyMap& F, int m,
                                               double margin = 0.05);

// lhs = delta(F(X), F(Y)), rhs = delta(X, Y); holds when
// lhs.lower <= rhs.upper + sp_tol. Meaningful only for contractive F.
struct SchwarzPickReport {
  Enclosure lhs;
  Enclosure rhs;
  bool holds = false;
};

SchwarzPickReport schwarz_pick_check(const FreePolyMap& F,
                                     const OperatorTuple& X,
                                     const OperatorTuple& Y,
                                     const MetricOptions& opts = MetricOptions{},
                                     double sp_tol = 1e-7);

}  // namespace ncball
