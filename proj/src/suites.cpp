// suites.cpp: seeded property suites mirroring each module's invariants.
// Every check is phrased so that certified enclosures are compared soundly:
// a lower endpoint may only be tested against an upper endpoint plus slack.
#include "ncball/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ncball/automorphisms.hpp"
#include "ncball/errors.hpp"
#include "ncball/fock.hpp"
#include "ncball/freeholo.hpp"
#include "ncball/kernels.hpp"
#include "ncball/linalg.hpp"
#include "ncball/metrics.hpp"
#include "ncball/rng.hpp"
#include "ncball/serialize.hpp"
#include "ncball/tuples.hpp"

namespace ncball {
namespace {

class Checker {
 public:
  explicit Checker(SuiteResult& result) : result_(result) {}

  void check(bool ok, const std::string& what) {
    if (ok) {
      ++result_.passed;
    } else {
      ++result_.failed;
      result_.failures.push_back(what);
    }
  }

 private:
  SuiteResult& result_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  return seed * 0x9e3779b97f4a7c15ULL + salt;
}

std::string tag(const char* what, std::uint64_t index) {
  std::ostringstream out;
  out << what << " [trial " << index << "]";
  return out.str();
}

// Two tuples sharing one direction: A_i = u_i G_A, B_i = u_i G_B. These take
// the analytic symbol route, so their enclosures are tight.
std::pair<OperatorTuple, OperatorTuple> collinear_pair(int d, double sa,
                                                       double sb,
                                                       std::uint64_t seed) {
  Rng rng = Rng::split(seed, 0x636f6c6cULL);
  ComplexMatrix G = rng.gaussian_matrix(d, d);
  G *= 1.0 / op_norm(G);
  Eigen::Vector2d u(0.8, 0.6);
  std::vector<ComplexMatrix> A, B;
  for (int i = 0; i < 2; ++i) {
    A.push_back(u(i) * sa * G);
    B.push_back(u(i) * sb * G);
  }
  return {OperatorTuple(2, d, std::move(A)), OperatorTuple(2, d, std::move(B))};
}

FreePolyMap seeded_contractive_map(std::uint64_t seed) {
  Rng rng = Rng::split(seed, 0x667265656d6170ULL);
  FreePolyMap F;
  F.n_in = 2;
  F.q_out = 2;
  F.e = 1;
  std::vector<Word> words{Word{}};
  for (int a = 1; a <= 2; ++a) {
    words.push_back(Word(std::vector<int>{a}));
    for (int b = 1; b <= 2; ++b) {
      words.push_back(Word(std::vector<int>{a, b}));
    }
  }
  for (int j = 0; j < 2; ++j) {
    for (const Word& w : words) {
      F.coeffs[{j, w}] = rng.gaussian_matrix(1, 1);
    }
  }
  return normalize_contractive(F, 6, 0.3).map;
}

void linalg_suite(Checker& c, std::uint64_t seed, int trials) {
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::split(mix(seed, static_cast<std::uint64_t>(t)), 0x6c61ULL);
    const ComplexMatrix A = rng.gaussian_matrix(3, 3);
    const ComplexMatrix B = rng.gaussian_matrix(3, 3);
    const double scale = op_norm(A) * op_norm(B);
    c.check(op_norm(A * B) <= scale + 1e-12 * scale,
            tag("operator norm is submultiplicative", t));

    const ComplexMatrix M = A * A.adjoint();
    const ComplexMatrix S = psd_sqrt(M);
    c.check(op_norm(S * S - M) <= 1e-10 * op_norm(M),
            tag("psd_sqrt squares back", t));

    c.check(std::abs(op_norm(kron(A, B)) - scale) <= 1e-10 * scale,
            tag("kron norm is multiplicative", t));

    const ComplexMatrix H = 0.5 * (A + A.adjoint());
    const auto [vals, vecs] = herm_eig(H);
    const ComplexMatrix R =
        vecs * vals.cast<Complex>().asDiagonal() * vecs.adjoint();
    c.check(op_norm(H - R) <= 1e-10 * std::max(1.0, op_norm(H)),
            tag("herm_eig reconstructs", t));
  }
}

void fock_suite(Checker& c, std::uint64_t, int) {
  for (int n : {1, 2, 3}) {
    for (int m : {2, 3}) {
      const TruncatedFock space(n, m);
      std::vector<ComplexMatrix> R;
      for (int i = 1; i <= n; ++i) {
        R.push_back(right_creation(space, i));
      }
      ComplexMatrix low_projection =
          ComplexMatrix::Zero(space.dim, space.dim);
      for (Eigen::Index idx = 0; idx < space.dim; ++idx) {
        if (space.level_of(idx) < m) {
          low_projection(idx, idx) = 1.0;
        }
      }
      bool isometry_exact = true;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const ComplexMatrix product = R[static_cast<std::size_t>(i)]
                                            .adjoint() *
                                        R[static_cast<std::size_t>(j)];
          const ComplexMatrix expected =
              i == j ? low_projection
                     : ComplexMatrix(ComplexMatrix::Zero(space.dim, space.dim));
          if ((product - expected).cwiseAbs().maxCoeff() != 0.0) {
            isometry_exact = false;
          }
        }
      }
      c.check(isometry_exact,
              tag("creations are isometries with orthogonal ranges",
                  static_cast<std::uint64_t>(10 * n + m)));

      ComplexMatrix range_sum = ComplexMatrix::Zero(space.dim, space.dim);
      for (const ComplexMatrix& Ri : R) {
        range_sum += Ri * Ri.adjoint();
      }
      bool diagonal_01 = true;
      for (Eigen::Index r = 0; r < space.dim; ++r) {
        for (Eigen::Index col = 0; col < space.dim; ++col) {
          const double re = range_sum(r, col).real();
          const double im = range_sum(r, col).imag();
          if (im != 0.0 || (r != col && re != 0.0) ||
              (r == col && re != 0.0 && re != 1.0)) {
            diagonal_01 = false;
          }
        }
      }
      c.check(diagonal_01, tag("sum of range projections stays below I",
                               static_cast<std::uint64_t>(10 * n + m)));

      ComplexMatrix power = ComplexMatrix::Identity(space.dim, space.dim);
      for (int k = 0; k <= m; ++k) {
        power = (power * R[0]).eval();
      }
      c.check(power.cwiseAbs().maxCoeff() == 0.0,
              tag("creation power m+1 vanishes",
                  static_cast<std::uint64_t>(10 * n + m)));

      ComplexMatrix perm = ComplexMatrix::Zero(space.dim, space.dim);
      for (Eigen::Index idx = 0; idx < space.dim; ++idx) {
        perm(word_index(reverse(index_word(idx, space)), space), idx) = 1.0;
      }
      bool conjugate_exact = true;
      for (int i = 1; i <= n; ++i) {
        const ComplexMatrix lhs = left_creation(space, i);
        const ComplexMatrix rhs =
            perm * right_creation(space, i) * perm.transpose();
        if ((lhs - rhs).cwiseAbs().maxCoeff() != 0.0) {
          conjugate_exact = false;
        }
      }
      c.check(conjugate_exact,
              tag("left creation is reversal-conjugate to right",
                  static_cast<std::uint64_t>(10 * n + m)));
    }
  }
}

void tuples_suite(Checker& c, std::uint64_t seed, int trials) {
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = mix(seed, static_cast<std::uint64_t>(t));
    const int n = 1 + t % 3;
    const int d = 1 + t % 3;
    const double target = 0.05 + 0.94 * (t % 17) / 16.0;
    const OperatorTuple X = random_tuple(n, d, target, s);

    const JsrEstimate jsr = joint_spectral_radius(X);
    c.check(jsr.value <= row_norm(X) + 1e-6,
            tag("spectral radius below row norm", t));

    Rng rng = Rng::split(s, 0x756e69ULL);
    const ComplexMatrix G = rng.gaussian_matrix(d, d);
    Eigen::HouseholderQR<ComplexMatrix> qr(G);
    const ComplexMatrix V = qr.householderQ() * ComplexMatrix::Identity(d, d);
    std::vector<ComplexMatrix> rotated;
    for (const ComplexMatrix& Xi : X.X) {
      rotated.push_back(V * Xi * V.adjoint());
    }
    const JsrEstimate jsr_rot =
        joint_spectral_radius(OperatorTuple(n, d, std::move(rotated)));
    c.check(std::abs(jsr_rot.value - jsr.value) <= 1e-6,
            tag("spectral radius is unitarily invariant", t));

    const ComplexMatrix D = defect(X);
    c.check(op_norm(D * D + row_sum(X) - identity(d)) <= 1e-10,
            tag("defect squares to I minus the row sum", t));

    c.check(classify(random_tuple(n, d, std::min(target, 0.99), s + 1)).tag ==
                BallRegion::OpenBall,
            tag("random interior tuples classify as open ball", t));
  }
}

void kernels_suite(Checker& c, std::uint64_t seed, int trials) {
  const int reps = std::max(1, trials / 10);
  for (int t = 0; t < reps; ++t) {
    const std::uint64_t s = mix(seed, static_cast<std::uint64_t>(t));
    const OperatorTuple X = random_tuple(2, 2, 0.8, s);
    const int m = 3;

    const ComplexMatrix rec = reconstruction(X, m).M;
    ComplexMatrix power = ComplexMatrix::Identity(rec.rows(), rec.cols());
    for (int k = 0; k <= m; ++k) {
      power = (power * rec).eval();
    }
    c.check(power.cwiseAbs().maxCoeff() == 0.0,
            tag("reconstruction is nilpotent", t));

    const ComplexMatrix big = poisson_kernel(X, m + 1, 0.9);
    const ComplexMatrix small = poisson_kernel(X, m, 0.9);
    // Kernel rows group as component * fock_dim + word, so cutting back to
    // the lower level means keeping the leading words inside every block.
    const TruncatedFock big_space(X.n, m + 1);
    const TruncatedFock small_space(X.n, m);
    std::vector<Eigen::Index> keep;
    for (int a = 0; a < X.d; ++a)
      for (Eigen::Index f = 0; f < small_space.dim; ++f)
        keep.push_back(a * big_space.dim + f);
    double corner_gap = 0.0;
    for (std::size_t p = 0; p < keep.size(); ++p)
      for (std::size_t q = 0; q < keep.size(); ++q)
        corner_gap =
            std::max(corner_gap,
                     std::abs(big(keep[p], keep[q]) -
                              small(static_cast<Eigen::Index>(p),
                                    static_cast<Eigen::Index>(q))));
    c.check(corner_gap <= 1e-13,
            tag("kernel corners are consistent across levels", t));

    const OperatorTuple B = random_tuple(2, 2, 0.5, s + 7);
    double prev = 0.0;
    bool monotone = true;
    for (int mm = 1; mm <= 4; ++mm) {
      const double cur = corner_quotient_norm(X, B, mm);
      if (cur < prev - 1e-10) {
        monotone = false;
      }
      prev = cur;
    }
    c.check(monotone, tag("corner quotient norms grow with the level", t));
  }

  for (int t = 0; t < 20; ++t) {
    const std::uint64_t s = mix(seed, 0x62616e64ULL + t);
    const int n = (t % 2 == 0) ? 2 : 1;
    const int m = (n == 2) ? 5 : 8;
    const OperatorTuple X = random_tuple(n, 2, 0.95, s);
    for (double r : {0.3, 0.6, 0.9}) {
      const auto [vals, vecs] = herm_eig(poisson_kernel(X, m, r));
      c.check(vals(0) >= (1.0 - r) / (1.0 + r) - 1e-9 &&
                  vals(vals.size() - 1) <= (1.0 + r) / (1.0 - r) + 1e-9,
              tag("kernel spectrum stays in the harnack band", t));
    }
  }
}

void metrics_suite(Checker& c, std::uint64_t seed, int trials) {
  MetricOptions coarse;
  coarse.tol = 0.05;
  coarse.m_max = 5;
  const int reps = std::max(1, trials / 10);

  for (int t = 0; t < reps; ++t) {
    const std::uint64_t s = mix(seed, static_cast<std::uint64_t>(t));
    const auto [A, B] = collinear_pair(2, 0.6, 0.35, s);
    const OperatorTuple P = random_tuple(2, 2, 0.5, s + 11);
    const OperatorTuple Q = random_tuple(2, 2, 0.4, s + 12);

    const Enclosure ab = delta(A, B, coarse);
    const Enclosure ba = delta(B, A, coarse);
    c.check(std::abs(ab.mid() - ba.mid()) <=
                std::max(ab.width(), ba.width()) + 1e-9,
            tag("delta is symmetric", t));

    const auto [Amid, C] = collinear_pair(2, 0.45, 0.2, s);
    const Enclosure ac = delta(A, C, coarse);
    const Enclosure mid_leg = delta(A, Amid, coarse);
    const Enclosure mid_leg2 = delta(Amid, C, coarse);
    c.check(ac.lower <= mid_leg.upper + mid_leg2.upper + 1e-7,
            tag("delta satisfies the triangle inequality", t));

    c.check(delta(P, P, coarse).upper == 0.0,
            tag("delta vanishes on equal tuples", t));
    c.check(ab.lower > 0.0, tag("delta separates distinct tuples", t));

    const double bound =
        std::log(op_norm(defect(P)) * op_norm(defect(Q)) /
                 ((1.0 - row_norm(P)) * (1.0 - row_norm(Q))));
    c.check(delta(P, Q, coarse).lower <= bound + 1e-8,
            tag("defect quotient bounds delta from above", t));

    const int m = 4;
    const double dh_m = kernel_metric_at_level(P, Q, m, 1.0);
    const double pa = op_norm(poisson_kernel(P, m, 1.0));
    const double pb = op_norm(poisson_kernel(Q, m, 1.0));
    const double pa_inv = op_norm(inverse(poisson_kernel(P, m, 1.0)));
    const double pb_inv = op_norm(inverse(poisson_kernel(Q, m, 1.0)));
    const Enclosure dpq = delta(P, Q, coarse);
    const double sandwich_lo =
        0.5 * std::log(1.0 + dh_m / std::max(pa, pb));
    const double sandwich_hi =
        0.5 * std::log(1.0 + dh_m * std::max(pa_inv, pb_inv));
    c.check(sandwich_lo - 0.05 <= dpq.upper && dpq.lower <= sandwich_hi + 0.05,
            tag("matched-level kernels sandwich delta", t));

    OperatorTuple diff = P;
    for (int i = 0; i < diff.n; ++i) {
      diff.X[static_cast<std::size_t>(i)] -= Q.X[static_cast<std::size_t>(i)];
    }
    const double gap = row_norm(diff);
    const Enclosure dh = kernel_metric(P, Q, coarse);
    c.check(gap <= dh.upper + 1e-9,
            tag("kernel metric dominates the row gap", t));
    c.check(dh.lower <= 2.0 * gap / ((1.0 - row_norm(P)) *
                                     (1.0 - row_norm(Q))) +
                            1e-9,
            tag("kernel metric is capped by the telescoped gap", t));

    MetricOptions pinned = coarse;
    pinned.m_fixed = 2;
    const double lower2 = delta(P, Q, pinned).lower;
    pinned.m_fixed = 4;
    const double lower4 = delta(P, Q, pinned).lower;
    c.check(lower2 <= lower4 + 1e-12,
            tag("corner lower bounds grow with the level", t));
  }

  const Enclosure scalar = delta(scalar_tuple({Complex(0.5)}),
                                 scalar_tuple({Complex(0.0)}), MetricOptions{});
  const double half_log3 = 0.5 * std::log(3.0);
  c.check(scalar.lower <= half_log3 && half_log3 <= scalar.upper,
          "scalar closed form lies inside the enclosure");

  const auto [RA, RB] = collinear_pair(2, 0.7, 0.4, mix(seed, 0x72ULL));
  double prev_omega = 0.0;
  double prev_dh = 0.0;
  bool omega_monotone = true;
  bool dh_monotone = true;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const Enclosure w = omega(scaled(RA, r), scaled(RB, r), MetricOptions{});
    const Enclosure h =
        kernel_metric(scaled(RA, r), scaled(RB, r), MetricOptions{});
    if (w.mid() < prev_omega - 2e-6) {
      omega_monotone = false;
    }
    if (h.mid() < prev_dh - 2e-6) {
      dh_monotone = false;
    }
    prev_omega = w.mid();
    prev_dh = h.mid();
  }
  c.check(omega_monotone, "harnack gauge grows with the scaling radius");
  c.check(dh_monotone, "kernel metric grows with the scaling radius");
}

void automorphisms_suite(Checker& c, std::uint64_t seed, int trials) {
  ComplexVector lambda(2);
  lambda << Complex(0.3, 0.1), Complex(-0.2, 0.15);

  for (int t = 0; t < std::max(trials, 100); ++t) {
    const std::uint64_t s = mix(seed, static_cast<std::uint64_t>(t));
    const double target = 0.05 + 0.94 * (t % 23) / 22.0;
    const OperatorTuple X = random_tuple(2, 2, target, s);
    c.check(row_norm(psi_lambda(lambda, X)) < 1.0,
            tag("moebius maps keep the open ball", t));
  }

  const int reps = std::max(1, trials / 10);
  for (int t = 0; t < reps; ++t) {
    const std::uint64_t s = mix(seed, 0x6175746fULL + t);
    Rng rng = Rng::split(s, 0x756e69746172ULL);
    Eigen::HouseholderQR<ComplexMatrix> qr(rng.gaussian_matrix(2, 2));
    BallAutomorphism a;
    a.U = qr.householderQ() * ComplexMatrix::Identity(2, 2);
    a.lambda = lambda;

    const OperatorTuple X = random_tuple(2, 2, 0.75, s + 1);
    c.check(std::abs(row_norm(psi_unitary(a.U, X)) - row_norm(X)) <= 1e-12,
            tag("rotations preserve the row norm", t));

    const OperatorTuple twice = psi_lambda(lambda, psi_lambda(lambda, X));
    double gap = 0.0;
    for (int i = 0; i < X.n; ++i) {
      gap = std::max(gap, (twice.X[static_cast<std::size_t>(i)] -
                           X.X[static_cast<std::size_t>(i)])
                              .norm());
    }
    c.check(gap <= 1e-9, tag("moebius maps are involutions", t));

    const BallAutomorphism inv = invert(a);
    const OperatorTuple round_trip = apply(inv, apply(a, X));
    gap = 0.0;
    for (int i = 0; i < X.n; ++i) {
      gap = std::max(gap, (round_trip.X[static_cast<std::size_t>(i)] -
                           X.X[static_cast<std::size_t>(i)])
                              .norm());
    }
    c.check(gap <= 1e-9, tag("inverse round-trips", t));

    MetricOptions coarse;
    coarse.tol = 0.05;
    coarse.m_max = 5;
    const OperatorTuple A = random_tuple(2, 2, 0.45, s + 2);
    const OperatorTuple B = random_tuple(2, 2, 0.4, s + 3);
    const Enclosure before = delta(A, B, coarse);
    const Enclosure after = delta(apply(a, A), apply(a, B), coarse);
    c.check(std::abs(after.mid() - before.mid()) <=
                std::max(before.width(), after.width()) + 1e-6,
            tag("automorphisms preserve delta", t));
  }

  const Enclosure e = delta(scalar_tuple({Complex(0.6), Complex(0.0)}),
                            scalar_tuple({Complex(0.0), Complex(0.0)}),
                            MetricOptions{});
  ComplexVector z(2), origin(2);
  z << Complex(0.6, 0.0), Complex(0.0, 0.0);
  origin.setZero();
  c.check(std::abs(e.mid() - poincare_bergman(z, origin)) <=
              e.width() + 1e-9,
          "delta matches the scalar hyperbolic distance");
}

void freeholo_suite(Checker& c, std::uint64_t seed, int trials) {
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = mix(seed, static_cast<std::uint64_t>(t));
    const FreePolyMap F = seeded_contractive_map(s);
    const double target = 0.3 + 0.4 * (t % 13) / 12.0;
    const OperatorTuple X = random_tuple(2, 2, target, s + 1);
    const OperatorTuple Y = random_tuple(2, 2, 0.7 - 0.3 * target, s + 2);
    MetricOptions coarse;
    coarse.tol = 0.25;
    coarse.m_max = 4;
    const SchwarzPickReport report = schwarz_pick_check(F, X, Y, coarse);
    c.check(report.holds, tag("schwarz-pick inequality holds", t));
  }

  FreePolyMap id;
  id.n_in = 2;
  id.q_out = 2;
  id.e = 1;
  for (int j = 0; j < 2; ++j) {
    ComplexMatrix one(1, 1);
    one(0, 0) = 1.0;
    id.coeffs[{j, Word(std::vector<int>{j + 1})}] = one;
  }
  MetricOptions coarse;
  coarse.tol = 0.25;
  coarse.m_max = 4;
  const OperatorTuple X = random_tuple(2, 2, 0.6, mix(seed, 0x6964ULL));
  const OperatorTuple Y = random_tuple(2, 2, 0.45, mix(seed, 0x6964ULL) + 1);
  const SchwarzPickReport id_report = schwarz_pick_check(id, X, Y, coarse);
  c.check(id_report.lhs.lower == id_report.rhs.lower &&
              id_report.lhs.upper == id_report.rhs.upper,
          "identity map achieves the caratheodory equality");

  const int reps = std::max(1, trials / 10);
  for (int t = 0; t < reps; ++t) {
    const std::uint64_t s = mix(seed, 0x726f74ULL + t);
    Rng map_rng = Rng::split(s, 0x6d617033ULL);
    FreePolyMap F;
    F.n_in = 2;
    F.q_out = 1;
    F.e = 2;
    std::vector<Word> words{Word{}};
    for (int a = 1; a <= 2; ++a) {
      words.push_back(Word(std::vector<int>{a}));
      for (int b = 1; b <= 2; ++b) {
        words.push_back(Word(std::vector<int>{a, b}));
      }
    }
    for (const Word& w : words) {
      F.coeffs[{0, w}] = map_rng.gaussian_matrix(2, 2);
    }
    Rng u_rng = Rng::split(s, 0x75ULL);
    Eigen::HouseholderQR<ComplexMatrix> qr(u_rng.gaussian_matrix(2, 2));
    const ComplexMatrix U =
        qr.householderQ() * ComplexMatrix::Identity(2, 2);
    FreePolyMap rotated = F;
    for (auto& [key, B] : rotated.coeffs) {
      ComplexMatrix acc = ComplexMatrix::Zero(2, 2);
      for (const auto& [other, A] : F.coeffs) {
        if (other.second.length() != key.second.length()) {
          continue;
        }
        Complex weight = 1.0;
        for (int pos = 0; pos < key.second.length(); ++pos) {
          weight *= U(key.second.letters[static_cast<std::size_t>(pos)] - 1,
                      other.second.letters[static_cast<std::size_t>(pos)] - 1);
        }
        acc += weight * A;
      }
      B = acc;
    }
    const OperatorTuple P = random_tuple(2, 2, 0.8, s + 5);
    const OperatorTuple lhs = eval(rotated, P);
    const OperatorTuple rhs = eval(F, psi_unitary(U, P));
    c.check((lhs.X[0] - rhs.X[0]).norm() <= 1e-10,
            tag("evaluation commutes with rotations", t));

    double prev = 0.0;
    bool monotone = true;
    for (int m = 2; m <= 5; ++m) {
      const double value = sup_norm_estimate(F, m).value;
      if (value < prev - 1e-13) {
        monotone = false;
      }
      prev = value;
    }
    c.check(monotone, tag("sup-norm estimates grow with the level", t));
  }
}

void cli_suite(Checker& c, std::uint64_t seed, int trials) {
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = mix(seed, static_cast<std::uint64_t>(t));
    const int n = 1 + t % 3;
    const int d = 1 + t % 3;
    const OperatorTuple X = random_tuple(n, d, 0.9, s);
    const OperatorTuple Y = parse_tuple(serialize_tuple(X));
    bool exact = Y.n == X.n && Y.d == X.d;
    for (int i = 0; exact && i < X.n; ++i) {
      exact = (Y.X[static_cast<std::size_t>(i)].array() ==
               X.X[static_cast<std::size_t>(i)].array())
                  .all();
    }
    c.check(exact, tag("tuple documents round-trip bit-exactly", t));
  }

  ComplexVector center(2);
  center << Complex(0.3, 0.1), Complex(-0.2, 0.2);
  for (double rho : {0.5, 1.2}) {
    bool on_circle = true;
    for (const ComplexVector& w : delta_circle(center, rho, 8)) {
      if (std::abs(poincare_bergman(center, w) - rho) > 1e-8) {
        on_circle = false;
      }
    }
    c.check(on_circle, "disk points achieve the requested distance");
  }
}

using SuiteFn = std::function<void(Checker&, std::uint64_t, int)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"linalg", linalg_suite},   {"fock", fock_suite},
      {"tuples", tuples_suite},   {"kernels", kernels_suite},
      {"metrics", metrics_suite}, {"automorphisms", automorphisms_suite},
      {"freeholo", freeholo_suite}, {"cli", cli_suite}};
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) {
    names.push_back(name);
  }
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      int trials) {
  if (trials < 1) {
    throw Error("trials must be at least 1");
  }
  for (const auto& [key, fn] : registry()) {
    if (key == name) {
      SuiteResult result;
      result.name = name;
      Checker checker(result);
      fn(checker, seed, trials);
      return result;
    }
  }
  throw Error("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::string& which,
                                    std::uint64_t seed, int trials) {
  std::vector<SuiteResult> results;
  if (which == "all") {
    for (const auto& [name, fn] : registry()) {
      results.push_back(run_suite(name, seed, trials));
    }
    return results;
  }
  results.push_back(run_suite(which, seed, trials));
  return results;
}

}  // namespace ncball
