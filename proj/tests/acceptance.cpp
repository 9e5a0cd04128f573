// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit code is the number of
// failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bidisk/errors.hpp"
#include "bidisk/hardy_ops.hpp"
#include "bidisk/json_io.hpp"
#include "bidisk/kernel.hpp"
#include "bidisk/subhardy.hpp"
#include "test_util.hpp"

using namespace bidisk;
namespace fs = std::filesystem;

namespace {

BiPoly z1() { return BiPoly::variable(1); }
BiPoly z2() { return BiPoly::variable(2); }
BiPoly one() { return BiPoly::constant(1.0); }
BiPoly half_shift() { return (one() + z1()) * Complex(0.5, 0.0); }

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %02d %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// 1. Szego Gram matrices stay PSD relative to their trace.
void criterion_szego_positivity() {
  double worst = 0.0;
  bool pass = true;
  for (int t = 0; t < 200; ++t) {
    Rng rng = Rng::split(1001, t);
    const int size = rng.uniform_int(1, 12);
    const PointSet s = PointSet::sample(rng, size, 0.98);
    const HermMatrix g = gram(KernelExpr::szego(), s);
    const PsdVerdict v = psd_check(g, 0.0);
    const double floor = -1e-10 * g.trace_real();
    worst = std::min(worst, v.min_eig);
    if (v.min_eig < floor) pass = false;
  }
  report(1, "szego-positivity", pass, "worst min eig " + fmt(worst) + " over 200 sets");
}

// 2. One-variable dBR kernels of contractive symbols admit no certificate.
void criterion_jury_one_variable() {
  bool pass = true;
  int checked = 0;
  for (int k = 0; k < 50; ++k) {
    Rng rng = Rng::split(2002, k);
    const int var = (k % 2) + 1;
    BiPoly b = var == 1 ? testutil::random_int_bipoly(rng, 6, 0)
                        : testutil::random_int_bipoly(rng, 0, 6);
    if (b.is_zero()) b = BiPoly::constant(Complex(0.5, 0.0));
    b = b * Complex(0.99 / sup_norm_grid(b, 256), 0.0);
    const PositivityScreen s =
        positivity_test(KernelExpr::one_var_dbr(b, var), 200, 8, 2002 + k);
    ++checked;
    if (s.counterexample_found) pass = false;
  }
  report(2, "jury-one-variable", pass,
         std::to_string(checked) + " symbols x 200 trials, no certificate");
}

// 3. Constant and separated component maps screen positive.
void criterion_separated_cases() {
  const KernelExpr const_case =
      KernelExpr::r_kernel((z1() + z2()) * Complex(0.5, 0.0),
                           BiPoly::constant(Complex(0.55, 0.3)));
  const PositivityScreen a = positivity_test(const_case, 200, 8, 3003);

  const BiPoly phi1 = (z1() + z1() * z1()) * Complex(0.5, 0.0);
  const BiPoly psi2 = (one() + z2()) * Complex(0.5, 0.0);
  const PositivityScreen b = positivity_test(KernelExpr::r_kernel(phi1, psi2), 200, 8, 3004);

  const bool pass = !a.counterexample_found && !b.counterexample_found;
  report(3, "separated-components", pass,
         "constant-psi worst " + fmt(a.worst_min_eig) + ", separated worst " +
             fmt(b.worst_min_eig));
}

// 4. The diagonal map: negativity certificate plus exact sqrt(N+1) growth.
void criterion_diagonal_counterexample() {
  const auto cert = negativity_search(KernelExpr::r_kernel(z1(), z1()), 2, 8, 4004, 10000);
  bool pass = cert.has_value() && cert->value <= -0.3;
  std::string detail = cert.has_value() ? "certificate value " + fmt(cert->value)
                                        : "no certificate found";

  std::vector<int> ns;
  for (int n = 1; n <= 30; ++n) ns.push_back(n);
  const std::vector<double> norms = comp_norm_sequence(SymbolPair(z1(), z1()), ns);
  double dev = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    dev = std::max(dev, std::abs(norms[k] - std::sqrt(ns[k] + 1.0)));
  }
  if (dev > 1e-8) pass = false;
  report(4, "diagonal-counterexample", pass, detail + ", norm dev " + fmt(dev));
}

// 5. Contractive radius 0.5: the norm sequence has settled by N = 20.
void criterion_contractive_plateau() {
  std::vector<int> ns;
  for (int n = 20; n <= 30; ++n) ns.push_back(n);
  const SymbolPair b(z1() * Complex(0.5, 0.0), z1() * Complex(0.5, 0.0));
  const std::vector<double> norms = comp_norm_sequence(b, ns);
  double max_inc = 0.0;
  for (std::size_t k = 1; k < norms.size(); ++k) {
    max_inc = std::max(max_inc, norms[k] - norms[k - 1]);
  }
  report(5, "contractive-plateau", max_inc < 1e-6, "max increment " + fmt(max_inc));
}

// 6. Norm bound sqrt(3) dominates every truncation for the scaled pair.
void criterion_norm_bound() {
  const BiPoly phi = half_shift();
  const ComEstimate est = theorem_com_k(phi, z2(), default_com_sets(6006));
  // the a-priori cap 1/sup|psi| = 1 absorbs the rounding overshoot of 1/delta
  const double c = std::min(est.k, 1.0);
  const SymbolPair b(phi, z2() * Complex(c, 0.0));
  const double bound = theorem_M_bound(b);

  std::vector<int> ns;
  for (int n = 1; n <= 30; ++n) ns.push_back(n);
  const std::vector<double> norms = comp_norm_sequence(b, ns);
  double worst = 0.0;
  for (const double v : norms) worst = std::max(worst, v);

  const bool pass = std::abs(bound - std::sqrt(3.0)) <= 1e-12 &&
                    worst <= std::sqrt(3.0) + 1e-6 && est.consistent;
  report(6, "theorem-norm-bound", pass,
         "c " + fmt(c) + ", max norm " + fmt(worst) + " vs bound " + fmt(bound));
}

// 7. Toeplitz product identity on the protected window.
void criterion_han_identity() {
  double worst = verify_han(embed(z1()), conj(embed(z1())), 8);
  for (int t = 0; t < 20; ++t) {
    Rng rng = Rng::split(7007, t);
    const TrigPoly f = testutil::random_int_trigpoly(rng, 3);
    const TrigPoly g = testutil::random_int_trigpoly(rng, 3);
    worst = std::max(worst, verify_han(f, g, 12));
  }
  report(7, "toeplitz-hankel-identity", worst <= 1e-12,
         "max deviation " + fmt(worst) + " over 21 symbol pairs");
}

// 8. Backward-shift reconstruction is exact.
void criterion_backward_shift() {
  bool pass = true;
  for (int t = 0; t < 100; ++t) {
    Rng rng = Rng::split(8008, t);
    const BiPoly p = testutil::random_int_bipoly(rng, 8, 8);
    for (int j : {1, 2}) {
      if (!(BiPoly::variable(j) * backward_shift(p, j) + project(p, j) == p)) pass = false;
    }
  }
  report(8, "backward-shift-identity", pass, "100 random polynomials, both variables");
}

// 9. The three Pythagorean mates.
void criterion_mates() {
  const Complex h(0.5, 0.0);
  const std::vector<std::pair<BiPoly, BiPoly>> pairs = {
      {(one() + z1()) * h, (one() - z1()) * h},
      {(one() + z1() * z2()) * h, (one() - z1() * z2()) * h},
      {(z1() + z2()) * h, (z1() - z2()) * h},
  };
  bool pass = true;
  double worst = 0.0;
  for (const auto& [phi, a] : pairs) {
    const double dev = mate_deviation(phi, a);
    worst = std::max(worst, dev);
    if (!mate_check(phi, a) || dev > 1e-12) pass = false;
  }
  report(9, "pythagorean-mates", pass, "max coefficient deviation " + fmt(worst));
}

// 10. Decompose / assemble is the identity, never raising NotDivisible.
void criterion_decompositions() {
  bool pass = true;
  std::string detail = "3 forms x 100 random polynomials";
  try {
    for (int t = 0; t < 100; ++t) {
      Rng rng = Rng::split(10010, t);
      const BiPoly f = testutil::random_int_bipoly(rng, 8, 8, 3, 0.5);
      if (!(assemble(decompose_ex1(f)) == f)) pass = false;
      if (!(assemble(decompose_ex2(f)) == f)) pass = false;
      if (!(assemble(decompose_ex3(f)) == f)) pass = false;
    }
  } catch (const NotDivisible& e) {
    pass = false;
    detail = std::string("NotDivisible raised: ") + e.what();
  }
  report(10, "decompose-roundtrip", pass, detail);
}

// 11. Defect-operator route agrees with the closed-form kernel.
void criterion_defect_crosscheck() {
  const std::vector<BiPoly> phis = {half_shift(), z1() * z2()};
  double worst = 0.0;
  for (std::size_t p = 0; p < phis.size(); ++p) {
    const KernelExpr k = KernelExpr::dbr2(phis[p]);
    Rng rng = Rng::split(11011, p);
    for (int t = 0; t < 20; ++t) {
      const Point2 w(rng.in_disk(0.5), rng.in_disk(0.5));
      const Point2 z(rng.in_disk(0.5), rng.in_disk(0.5));
      const Complex got = dbr_defect_check(phis[p], w, z, 40);
      worst = std::max(worst, std::abs(got - kernel_eval(k, z, w)));
    }
  }
  report(11, "defect-crosscheck", worst <= 1e-6,
         "max deviation " + fmt(worst) + " at N=40");
}

// 12. The multiplier pencil dominates the pointwise sup.
void criterion_norm_consistency() {
  bool pass = true;
  double slack = 1e300;
  for (int t = 0; t < 50; ++t) {
    Rng rng = Rng::split(12012, t);
    const BiPoly psi = testutil::random_int_bipoly(rng, 3, 3);
    const PointSet s = PointSet::sample(rng, rng.uniform_int(2, 10));
    double point_sup = 0.0;
    for (const auto& pt : s.points()) point_sup = std::max(point_sup, std::abs(psi.eval(pt)));
    const double delta = multiplier_norm_lb(psi, KernelExpr::szego(), s);
    slack = std::min(slack, delta - point_sup);
    if (delta < point_sup - 1e-9) pass = false;
  }
  report(12, "pencil-vs-pointwise-sup", pass, "min slack " + fmt(slack));
}

// 13. Entrywise powers of a positive R stay positive.
void criterion_kernel_powers() {
  const KernelExpr r = KernelExpr::r_kernel(half_shift(), z2());
  bool pass = true;
  int used = 0;
  for (int t = 0; used < 20 && t < 40; ++t) {
    Rng rng = Rng::split(13013, t);
    const PointSet s = PointSet::sample(rng, rng.uniform_int(2, 8));
    if (psd_check(gram(r, s)).status != PsdVerdict::Status::PSD) continue;
    ++used;
    for (int alpha : {2, 3}) {
      if (psd_check(gram(KernelExpr::power(r, alpha), s)).status !=
          PsdVerdict::Status::PSD) {
        pass = false;
      }
    }
  }
  if (used < 20) pass = false;
  report(13, "kernel-powers", pass, std::to_string(used) + " PSD base sets, alpha in {2,3}");
}

// 14. Byte-identical reports for identical config and seed.
void criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / "bidisk_acceptance";
  fs::create_directories(dir);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string phi = R"('{"terms":[{"i":1,"j":0,"re":1,"im":0}]}')";
  const std::string psi = R"('{"terms":[{"i":0,"j":1,"re":1,"im":0}]}')";
  bool pass = true;
  std::string detail;

  // identical config includes the output path: run twice into the same file
  // and capture the bytes after each run
  const auto run_twice = [&](const std::string& args, const std::string& stem,
                             bool with_csv) {
    const fs::path out = dir / (stem + ".json");
    const std::string cmd = std::string("BIDISK_LOG=quiet ") + BIDISK_CLI_PATH + " " + args +
                            " --out " + out.string() + " >/dev/null 2>&1";
    std::string first_json, first_csv;
    for (int run = 0; run < 2; ++run) {
      if (std::system(cmd.c_str()) != 0) {
        pass = false;
        detail = stem + ": nonzero exit";
        return;
      }
      const std::string j = slurp(out);
      const std::string c = with_csv ? slurp(dir / (stem + ".csv")) : std::string();
      if (run == 0) {
        first_json = j;
        first_csv = c;
      } else if (j.empty() || j != first_json || c != first_csv) {
        pass = false;
        detail = stem + ": reports differ between runs";
      }
    }
  };

  run_twice("kernel-check --phi " + phi + " --psi " + psi + " --seed 99 --trials 60 --set-size 8",
            "kernel_check", false);
  if (pass) {
    run_twice("comp-norm --phi " + phi + " --psi " + psi + " --n-list 1..8", "comp_norm", true);
  }
  if (pass) detail = "kernel-check and comp-norm reports byte-identical";
  report(14, "cli-determinism", pass, detail);
}

}  // namespace

int main() {
  criterion_szego_positivity();
  criterion_jury_one_variable();
  criterion_separated_cases();
  criterion_diagonal_counterexample();
  criterion_contractive_plateau();
  criterion_norm_bound();
  criterion_han_identity();
  criterion_backward_shift();
  criterion_mates();
  criterion_decompositions();
  criterion_defect_crosscheck();
  criterion_norm_consistency();
  criterion_kernel_powers();
  criterion_determinism();

  if (failures == 0) {
    std::printf("all 14 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
