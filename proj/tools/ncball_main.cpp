// ncball_main.cpp: batch front door. Subcommands for the metric enclosures,
// domination certificates, automorphisms, Schwarz-Pick reports, disk
// sampling and the seeded property-suite verifier. Exit codes: 0 success,
// 1 property failure, 2 malformed input, 3 enclosure did not converge.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncball/automorphisms.hpp"
#include "ncball/errors.hpp"
#include "ncball/freeholo.hpp"
#include "ncball/metrics.hpp"
#include "ncball/serialize.hpp"
#include "ncball/suites.hpp"
#include "ncball/tuples.hpp"

namespace {

using namespace ncball;
using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// JSON has no infinities, so non-finite endpoints become explicit strings.
json json_num(double v) {
  if (std::isfinite(v)) {
    return v;
  }
  return v > 0 ? "inf" : "-inf";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MalformedInput("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json witness_json(const ComplexVector& v) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    rows.push_back(json::array({v(i).real(), v(i).imag()}));
  }
  return rows;
}

int emit_enclosure(const std::string& op, const Enclosure& e, bool json_mode) {
  if (json_mode) {
    json out;
    out["op"] = op;
    out["lower"] = json_num(e.lower);
    out["upper"] = json_num(e.upper);
    out["mid"] = json_num(e.mid());
    out["width"] = json_num(e.width());
    out["m_used"] = e.m_used;
    out["converged"] = e.converged;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << op << " in [" << fmt17(e.lower) << ", " << fmt17(e.upper)
              << "]\n"
              << "mid " << fmt17(e.mid()) << "  width " << fmt17(e.width())
              << "\n"
              << "m_used " << e.m_used << "  converged "
              << (e.converged ? "yes" : "no") << "\n";
  }
  return e.converged ? 0 : 3;
}

struct MetricArgs {
  std::string file_a;
  std::string file_b;
  double tol = 1e-6;
  int m_max = 14;

  MetricOptions options() const {
    MetricOptions opts;
    opts.tol = tol;
    opts.m_max = m_max;
    return opts;
  }
};

void add_metric_options(CLI::App* sub, MetricArgs& args) {
  sub->add_option("A", args.file_a, "first tuple document")->required();
  sub->add_option("B", args.file_b, "second tuple document")->required();
  sub->add_option("--tol", args.tol, "enclosure width target");
  sub->add_option("--mmax", args.m_max, "largest truncation level");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "certified hyperbolic geometry on tuples of matrices: metric "
      "enclosures, domination certificates, automorphisms and property "
      "suites"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "wrap the result in a single JSON object");
  int exit_code = 0;

  MetricArgs dist_args;
  CLI::App* dist = app.add_subcommand(
      "distance", "hyperbolic metric enclosure between two tuples");
  dist->fallthrough();
  add_metric_options(dist, dist_args);
  dist->callback([&]() {
    const OperatorTuple A = parse_tuple(read_file(dist_args.file_a));
    const OperatorTuple B = parse_tuple(read_file(dist_args.file_b));
    exit_code = emit_enclosure("delta", delta(A, B, dist_args.options()),
                               json_mode);
  });

  MetricArgs omega_args;
  CLI::App* om = app.add_subcommand(
      "omega", "harnack gauge enclosure between two tuples");
  om->fallthrough();
  add_metric_options(om, omega_args);
  om->callback([&]() {
    const OperatorTuple A = parse_tuple(read_file(omega_args.file_a));
    const OperatorTuple B = parse_tuple(read_file(omega_args.file_b));
    exit_code = emit_enclosure("omega", omega(A, B, omega_args.options()),
                               json_mode);
  });

  MetricArgs dh_args;
  CLI::App* dh = app.add_subcommand(
      "dh", "kernel metric enclosure between two tuples");
  dh->fallthrough();
  add_metric_options(dh, dh_args);
  dh->callback([&]() {
    const OperatorTuple A = parse_tuple(read_file(dh_args.file_a));
    const OperatorTuple B = parse_tuple(read_file(dh_args.file_b));
    exit_code = emit_enclosure(
        "kernel_metric", kernel_metric(A, B, dh_args.options()), json_mode);
  });

  std::string radius_file;
  CLI::App* radius = app.add_subcommand(
      "spectral-radius", "joint spectral radius estimate of one tuple");
  radius->fallthrough();
  radius->add_option("X", radius_file, "tuple document")->required();
  radius->callback([&]() {
    const OperatorTuple X = parse_tuple(read_file(radius_file));
    const JsrEstimate est = joint_spectral_radius(X);
    if (json_mode) {
      json out;
      out["op"] = "spectral-radius";
      out["estimate"] = json_num(est.value);
      out["row_norm"] = json_num(row_norm(X));
      out["k_used"] = est.k_used;
      out["converged"] = est.converged;
      out["last_estimates"] = json::array({json_num(est.last_estimates[0]),
                                           json_num(est.last_estimates[1]),
                                           json_num(est.last_estimates[2])});
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "spectral_radius <= " << fmt17(est.value) << "\n"
                << "row_norm " << fmt17(row_norm(X)) << "\n"
                << "k_used " << est.k_used << "  converged "
                << (est.converged ? "yes" : "no") << "\n";
    }
    exit_code = est.converged ? 0 : 3;
  });

  MetricArgs harnack_args;
  double harnack_c = 2.0;
  CLI::App* harnack = app.add_subcommand(
      "harnack", "domination certificate: does K_A stay below c^2 K_B");
  harnack->fallthrough();
  add_metric_options(harnack, harnack_args);
  harnack->add_option("--c", harnack_c, "domination constant, >= 1")
      ->required();
  harnack->callback([&]() {
    const OperatorTuple A = parse_tuple(read_file(harnack_args.file_a));
    const OperatorTuple B = parse_tuple(read_file(harnack_args.file_b));
    const HarnackCertificate cert =
        harnack_dominated(A, B, harnack_c, harnack_args.options());
    if (json_mode) {
      json out;
      out["op"] = "harnack";
      out["verdict"] = cert.dominated ? "dominated" : "refuted";
      out["c"] = json_num(cert.c);
      out["m"] = cert.m;
      out["r"] = json_num(cert.r);
      out["r_grid"] = cert.r_grid;
      out["quad_form"] = json_num(cert.quad_form);
      out["witness"] = witness_json(cert.witness);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << (cert.dominated ? "DominatedUpTo" : "Refuted") << "  c "
                << fmt17(cert.c) << "  m " << cert.m << "  r " << fmt17(cert.r)
                << "\n"
                << "quad_form " << fmt17(cert.quad_form) << "\n";
      if (cert.witness.size() > 0) {
        std::cout << "witness";
        for (Eigen::Index i = 0; i < cert.witness.size(); ++i) {
          std::cout << " [" << fmt17(cert.witness(i).real()) << ", "
                    << fmt17(cert.witness(i).imag()) << "]";
        }
        std::cout << "\n";
      }
    }
    exit_code = 0;
  });

  CLI::App* aut = app.add_subcommand(
      "auto", "free holomorphic automorphisms of the ball");
  aut->require_subcommand(1);
  std::string unitary_file;
  std::string lambda_file;
  std::string point_file;
  CLI::App* aut_apply = aut->add_subcommand(
      "apply", "apply psi_unitary after psi_lambda to a tuple");
  aut_apply->fallthrough();
  aut_apply->add_option("--unitary", unitary_file, "rotation matrix document")
      ->required();
  aut_apply->add_option("--lambda", lambda_file, "scalar point document")
      ->required();
  aut_apply->add_option("X", point_file, "tuple document")->required();
  aut_apply->callback([&]() {
    BallAutomorphism a;
    a.U = parse_matrix(read_file(unitary_file));
    a.lambda = parse_vector(read_file(lambda_file));
    const OperatorTuple image = apply(a, parse_tuple(read_file(point_file)));
    const std::string doc = serialize_tuple(image, "image");
    if (json_mode) {
      json out;
      out["op"] = "auto-apply";
      out["result"] = json::parse(doc);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << doc << "\n";
    }
    exit_code = 0;
  });

  std::string sp_map_file;
  std::string sp_x_file;
  std::string sp_y_file;
  MetricArgs sp_args;
  double sp_tol = 1e-7;
  CLI::App* sp = app.add_subcommand(
      "schwarz-pick", "compare delta(F(X), F(Y)) against delta(X, Y)");
  sp->fallthrough();
  sp->add_option("F", sp_map_file, "free polynomial map document")->required();
  sp->add_option("X", sp_x_file, "first tuple document")->required();
  sp->add_option("Y", sp_y_file, "second tuple document")->required();
  sp->add_option("--tol", sp_args.tol, "enclosure width target");
  sp->add_option("--mmax", sp_args.m_max, "largest truncation level");
  sp->add_option("--sptol", sp_tol, "slack for the verdict");
  sp->callback([&]() {
    const FreePolyMap F = parse_free_map(read_file(sp_map_file));
    const OperatorTuple X = parse_tuple(read_file(sp_x_file));
    const OperatorTuple Y = parse_tuple(read_file(sp_y_file));
    const SchwarzPickReport report =
        schwarz_pick_check(F, X, Y, sp_args.options(), sp_tol);
    if (json_mode) {
      json out;
      out["op"] = "schwarz-pick";
      out["holds"] = report.holds;
      for (const auto& [name, e] :
           {std::pair<const char*, const Enclosure&>{"lhs", report.lhs},
            std::pair<const char*, const Enclosure&>{"rhs", report.rhs}}) {
        out[name]["lower"] = json_num(e.lower);
        out[name]["upper"] = json_num(e.upper);
        out[name]["m_used"] = e.m_used;
        out[name]["converged"] = e.converged;
      }
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "lhs in [" << fmt17(report.lhs.lower) << ", "
                << fmt17(report.lhs.upper) << "]\n"
                << "rhs in [" << fmt17(report.rhs.lower) << ", "
                << fmt17(report.rhs.upper) << "]\n"
                << "holds " << (report.holds ? "yes" : "no") << "\n";
    }
    exit_code = (report.lhs.converged && report.rhs.converged) ? 0 : 3;
  });

  std::string disk_center_file;
  double disk_radius = 0.5;
  int disk_samples = 16;
  CLI::App* disk = app.add_subcommand(
      "disk", "points on the delta-circle around a scalar center");
  disk->fallthrough();
  disk->add_option("--center", disk_center_file, "scalar point document")
      ->required();
  disk->add_option("--radius", disk_radius, "hyperbolic radius")->required();
  disk->add_option("--samples", disk_samples, "number of directions");
  disk->callback([&]() {
    const ComplexVector center = parse_vector(read_file(disk_center_file));
    const std::vector<ComplexVector> points =
        delta_circle(center, disk_radius, disk_samples);
    if (json_mode) {
      json rows = json::array();
      for (const ComplexVector& w : points) {
        rows.push_back(json::array(
            {w(0).real(), w(0).imag(), w(1).real(), w(1).imag(),
             poincare_bergman(center, w)}));
      }
      json out;
      out["op"] = "disk";
      out["columns"] = {"w_re1", "w_im1", "w_re2", "w_im2",
                        "achieved_distance"};
      out["rows"] = rows;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "w_re1,w_im1,w_re2,w_im2,achieved_distance\n";
      for (const ComplexVector& w : points) {
        std::cout << fmt17(w(0).real()) << "," << fmt17(w(0).imag()) << ","
                  << fmt17(w(1).real()) << "," << fmt17(w(1).imag()) << ","
                  << fmt17(poincare_bergman(center, w)) << "\n";
      }
    }
    exit_code = 0;
  });

  std::string verify_suite = "all";
  std::uint64_t verify_seed = 0;
  int verify_trials = 50;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the seeded property suites and report pass/fail counts");
  verify->fallthrough();
  verify->add_option("--suite", verify_suite, "suite name or 'all'");
  verify->add_option("--seed", verify_seed, "base seed");
  verify->add_option("--trials", verify_trials, "trial count per suite");
  verify->callback([&]() {
    const std::vector<SuiteResult> results =
        run_suites(verify_suite, verify_seed, verify_trials);
    int total_passed = 0;
    int total_failed = 0;
    for (const SuiteResult& r : results) {
      total_passed += r.passed;
      total_failed += r.failed;
    }
    if (json_mode) {
      json out;
      out["op"] = "verify";
      out["seed"] = verify_seed;
      out["trials"] = verify_trials;
      out["suites"] = json::array();
      for (const SuiteResult& r : results) {
        json s;
        s["name"] = r.name;
        s["passed"] = r.passed;
        s["failed"] = r.failed;
        s["failures"] = r.failures;
        out["suites"].push_back(std::move(s));
      }
      out["total_passed"] = total_passed;
      out["total_failed"] = total_failed;
      std::cout << out.dump(2) << "\n";
    } else {
      for (const SuiteResult& r : results) {
        std::cout << r.name << ": " << r.passed << " passed, " << r.failed
                  << " failed\n";
        for (const std::string& f : r.failures) {
          std::cout << "  FAIL " << f << "\n";
        }
      }
      std::cout << "total: " << total_passed << " passed, " << total_failed
                << " failed\n";
    }
    exit_code = total_failed == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
