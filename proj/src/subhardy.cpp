#include "bidisk/subhardy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bidisk/errors.hpp"
#include "bidisk/hardy_ops.hpp"

namespace bidisk {

namespace {

// Remainder tolerance used by the decomposers. Divisibility is guaranteed
// for them mathematically; the slack only absorbs floating accumulation for
// non-integer inputs.
constexpr double kDecompRemTol = 1e-11;

BiPoly z1() { return BiPoly::variable(1); }
BiPoly z2() { return BiPoly::variable(2); }
BiPoly one() { return BiPoly::constant(1.0); }

void require_one_variable(const BiPoly& p, int var, const char* what) {
  if (!p.is_one_variable(var)) {
    throw std::invalid_argument(std::string("Decomposition: ") + what +
                                " must be one-variable");
  }
}

}  // namespace

double mate_deviation(const BiPoly& phi, const BiPoly& a) {
  const TrigPoly tp = embed(phi);
  const TrigPoly ta = embed(a);
  const TrigPoly s = tp * conj(tp) + ta * conj(ta) - TrigPoly::constant(1.0);
  return s.max_abs_coeff();
}

bool mate_check(const BiPoly& phi, const BiPoly& a, double tol) {
  return mate_deviation(phi, a) <= tol;
}

MatePair::MatePair(BiPoly phi_, BiPoly a_) : phi(std::move(phi_)), a(std::move(a_)) {
  if (!mate_check(phi, a)) {
    throw std::invalid_argument("MatePair: |phi|^2 + |a|^2 != 1 on the torus");
  }
}

// --- decompositions -----------------------------------------------------------

Decomposition decompose_ex1(const BiPoly& f) {
  // f2(z2) = f(1, z2): per z2-power, the exact sum of coefficients over z1.
  BiPoly f2;
  for (const auto& [k, c] : f.terms()) f2.add_term(0, k.j, c);
  const BiPoly f1 = divide_exact(f - f2, z1() - one(), kDecompRemTol);
  return Decomposition{DecompForm::Ex1, f1, f2, std::nullopt};
}

Decomposition decompose_ex2(const BiPoly& f) {
  // Laurent restriction L(t) = f(t, 1/t): the monomial (i,j) lands at
  // t^(i-j). Nonnegative powers (constants included) go to f1, negative
  // powers to f2 via t^(-k) -> z2^k.
  BiPoly f1;
  BiPoly f2;
  for (const auto& [k, c] : f.terms()) {
    const int e = k.i - k.j;
    if (e >= 0) {
      f1.add_term(e, 0, c);
    } else {
      f2.add_term(0, -e, c);
    }
  }
  const BiPoly rest = f - f1 - f2;
  const BiPoly f3 = divide_exact(rest, z1() * z2() - one(), kDecompRemTol);
  return Decomposition{DecompForm::Ex2, f1, f2, f3};
}

Decomposition decompose_ex3(const BiPoly& f) {
  // Diagonal restriction f(z1, z1) read as the one-variable f1.
  BiPoly f1;
  for (const auto& [k, c] : f.terms()) f1.add_term(k.i + k.j, 0, c);
  const BiPoly f3 = divide_exact(f - f1, z1() - z2(), kDecompRemTol);
  return Decomposition{DecompForm::Ex3, f1, BiPoly{}, f3};
}

BiPoly assemble(const Decomposition& d) {
  switch (d.form) {
    case DecompForm::Ex1:
      require_one_variable(d.f2, 2, "f2");
      if (d.f3.has_value()) {
        throw std::invalid_argument("Decomposition: Ex1 carries no f3");
      }
      return (z1() - one()) * d.f1 + d.f2;
    case DecompForm::Ex2:
      require_one_variable(d.f1, 1, "f1");
      require_one_variable(d.f2, 2, "f2");
      return d.f1 + d.f2 + (z1() * z2() - one()) * d.f3.value();
    case DecompForm::Ex3:
      require_one_variable(d.f1, 1, "f1");
      require_one_variable(d.f2, 2, "f2");
      return d.f1 + d.f2 + (z1() - z2()) * d.f3.value();
  }
  throw std::logic_error("Decomposition: unknown form");
}

BiPoly g_function(const Decomposition& d) {
  switch (d.form) {
    case DecompForm::Ex1:
      require_one_variable(d.f2, 2, "f2");
      return z1() * d.f1 + d.f2;
    case DecompForm::Ex2:
      require_one_variable(d.f1, 1, "f1");
      require_one_variable(d.f2, 2, "f2");
      return d.f1 + d.f2 + z1() * z2() * d.f3.value();
    case DecompForm::Ex3:
      require_one_variable(d.f1, 1, "f1");
      require_one_variable(d.f2, 2, "f2");
      return z1() * d.f1 - z2() * d.f2 + z1() * z2() * d.f3.value();
  }
  throw std::logic_error("Decomposition: unknown form");
}

// --- preimages and the Thm-style constant ------------------------------------------

PreimageResult mate_preimage(const BiPoly& f, const BiPoly& a, int N) {
  if (a.is_zero()) throw std::invalid_argument("mate_preimage: a must be nonzero");
  if (N < 1) throw std::invalid_argument("mate_preimage: N must be >= 1");
  if (f.deg1() > N || f.deg2() > N) {
    throw std::invalid_argument("mate_preimage: f exceeds the degree-N box");
  }

  const OpMatrix T = toeplitz(conj(embed(a)), N);
  CVec rhs = CVec::Zero(T.rows.size());
  for (const auto& [k, c] : f.terms()) rhs(T.rows.find(k.i, k.j)) = c;

  Eigen::CompleteOrthogonalDecomposition<CMat> cod(T.entries);
  const CVec x = cod.solve(rhs);
  const double residual = (T.entries * x - rhs).norm();

  BiPoly h;
  for (int p = 0; p < T.cols.size(); ++p) {
    if (x(p) != Complex(0.0, 0.0)) {
      const MonoKey& k = T.cols.at(p);
      h.add_term(k.i, k.j, x(p));
    }
  }
  return PreimageResult{h, residual};
}

ComEstimate theorem_com_k(const BiPoly& phi, const BiPoly& psi,
                          const std::vector<PointSet>& S_list) {
  if (psi.is_zero()) throw DegenerateSymbol("theorem_com_k: psi is zero");
  if (S_list.empty()) throw std::invalid_argument("theorem_com_k: empty S_list");

  const KernelExpr K = KernelExpr::dbr2(phi);
  ComEstimate out;
  for (int s = 0; s < static_cast<int>(S_list.size()); ++s) {
    const double delta = multiplier_norm_lb(psi, K, S_list[static_cast<std::size_t>(s)]);
    if (delta > out.delta_max) {
      out.delta_max = delta;
      out.argmax_index = s;
    }
  }
  out.k = out.delta_max > 0.0 ? 1.0 / out.delta_max
                              : std::numeric_limits<double>::infinity();
  out.sup_grid = sup_norm_grid(psi, 64);
  out.consistent = out.k * out.sup_grid <= 1.0 + 1e-6;
  return out;
}

std::vector<PointSet> default_com_sets(std::uint64_t seed) {
  const Complex zero(0.0, 0.0);
  std::vector<PointSet> sets;
  sets.push_back(PointSet({Point2(zero, zero), Point2(zero, Complex(0.9, 0.0))}));
  sets.push_back(PointSet({Point2(zero, zero), Point2(Complex(0.9, 0.0), zero)}));

  std::vector<Point2> ladder;
  for (int k = 1; k <= 4; ++k) {
    const double r = 0.9 * k / 4.0;
    ladder.emplace_back(Complex(r, 0.0), zero);
    ladder.emplace_back(zero, Complex(r, 0.0));
    ladder.emplace_back(Complex(r / 2, r / 2), Complex(r / 2, -r / 2));
  }
  sets.push_back(PointSet(std::move(ladder)));

  Rng rng(seed);
  std::vector<Point2> nested = PointSet::sample(rng, 8).points();
  sets.push_back(PointSet(nested));
  for (int growth : {8, 8}) {
    for (int k = 0; k < growth; ++k) {
      nested.push_back(Point2(rng.in_disk(0.98), rng.in_disk(0.98)));
    }
    sets.push_back(PointSet(nested));
  }
  return sets;
}

}  // namespace bidisk
