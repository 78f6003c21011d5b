// freeholo.cpp: free polynomial maps, creation-operator sup-norm estimates,
// contractive normalization and the Schwarz-Pick verifier.
#include "ncball/freeholo.hpp"

#include <cmath>
#include <string>

#include "ncball/errors.hpp"

namespace ncball {
namespace {

constexpr double kStabTol = 1e-6;
constexpr Eigen::Index kEvalDimCap = 4096;

void check_map(const FreePolyMap& F) {
  if (F.n_in < 1 || F.q_out < 1 || F.e < 1) {
    throw Error("free polynomial map needs n_in, q_out, e >= 1");
  }
  for (const auto& [key, A] : F.coeffs) {
    if (key.first < 0 || key.first >= F.q_out) {
      throw BadTarget("coefficient component outside 0..q_out-1");
    }
    for (int letter : key.second.letters) {
      if (letter < 1 || letter > F.n_in) {
        throw BadGenerator("coefficient word contains letter outside 1..n_in");
      }
    }
    if (A.rows() != F.e || A.cols() != F.e) {
      throw BadDim("coefficient matrices must be e x e");
    }
  }
}

}  // namespace

int degree(const FreePolyMap& F) {
  check_map(F);
  int deg = 0;
  for (const auto& [key, A] : F.coeffs) {
    if (A.norm() > 0.0) {
      deg = std::max(deg, key.second.length());
    }
  }
  return deg;
}

OperatorTuple eval(const FreePolyMap& F, const OperatorTuple& X) {
  check_map(F);
  if (F.n_in != X.n) {
    throw ArityMismatch("map expects " + std::to_string(F.n_in) +
                        " generators, tuple has " + std::to_string(X.n));
  }
  const int de = X.d * F.e;
  std::vector<ComplexMatrix> out(static_cast<std::size_t>(F.q_out),
                                 ComplexMatrix::Zero(de, de));
  // Monomials are shared across components, so cache them per word.
  std::map<Word, ComplexMatrix> monomials;
  for (const auto& [key, A] : F.coeffs) {
    auto it = monomials.find(key.second);
    if (it == monomials.end()) {
      const std::vector<int>& letters = key.second.letters;
      ComplexMatrix Xw = letters.empty()
                             ? identity(X.d)
                             : X.X[static_cast<std::size_t>(letters[0] - 1)];
      for (std::size_t t = 1; t < letters.size(); ++t) {
        Xw = (Xw * X.X[static_cast<std::size_t>(letters[t] - 1)]).eval();
      }
      it = monomials.emplace(key.second, std::move(Xw)).first;
    }
    out[static_cast<std::size_t>(key.first)] += kron(it->second, A);
  }
  return OperatorTuple(F.q_out, de, std::move(out));
}

OperatorTuple left_creation_tuple(int n, int m) {
  const TruncatedFock space(n, m);
  std::vector<ComplexMatrix> S;
  S.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    S.push_back(left_creation(space, i));
  }
  return OperatorTuple(n, static_cast<int>(space.dim), std::move(S));
}

SupNormEstimate sup_norm_estimate(const FreePolyMap& F, int m) {
  check_map(F);
  if (m < 0) {
    throw Error("truncation level must be nonnegative");
  }
  const TruncatedFock top(F.n_in, m);
  if (top.dim * F.e > kEvalDimCap) {
    throw BadDim("truncation dimension exceeds the dense evaluation budget");
  }
  SupNormEstimate est;
  for (int mm = std::max(0, m - 2); mm <= m; ++mm) {
    est.ladder.push_back(row_norm(eval(F, left_creation_tuple(F.n_in, mm))));
  }
  est.value = est.ladder.back();
  return est;
}

ContractiveNormalization normalize_contractive(const FreePolyMap& F, int m,
                                               double margin) {
  if (!(margin > 0.0 && margin < 1.0)) {
    throw Error("margin must lie in (0, 1)");
  }
  const SupNormEstimate est = sup_norm_estimate(F, m);
  if (!(est.value > 0.0)) {
    throw ZeroMap("sup-norm estimate vanishes at this truncation");
  }
  ContractiveNormalization result;
  result.map = F;
  const double scale = (1.0 - margin) / est.value;
  for (auto& [key, A] : result.map.coeffs) {
    A *= scale;
  }
  result.estimate = est.value;
  result.ladder = est.ladder;
  // The estimate only ever increases with m, so certify contractivity just
  // when the ladder saw the whole degree and has essentially flattened.
  result.unverified_contractivity =
      !(m >= degree(F) && est.ladder.size() == 3 &&
        est.ladder.back() - est.ladder.front() <= kStabTol);
  return result;
}

SchwarzPickReport schwarz_pick_check(const FreePolyMap& F,
                                     const OperatorTuple& X,
                                     const OperatorTuple& Y,
                                     const MetricOptions& opts,
                                     double sp_tol) {
  SchwarzPickReport report;
  report.lhs = delta(eval(F, X), eval(F, Y), opts);
  report.rhs = delta(X, Y, opts);
  report.holds = report.lhs.lower <= report.rhs.upper + sp_tol;
  return report;
}

}  // namespace ncball
