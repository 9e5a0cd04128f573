#pragma once

#include <optional>
#include <vector>

#include "bidisk/bipoly.hpp"
#include "bidisk/kernel.hpp"

namespace bidisk {

// A symbol and its Pythagorean mate: |phi|^2 + |a|^2 = 1 on the torus,
// verified coefficient-wise at construction.
struct MatePair {
  BiPoly phi;
  BiPoly a;
  MatePair(BiPoly phi_, BiPoly a_);
};

// Max absolute coefficient of embed(phi)conj(embed(phi)) +
// embed(a)conj(embed(a)) - 1 as a trig polynomial.
double mate_deviation(const BiPoly& phi, const BiPoly& a);

// Exact identity check, tolerance 1e-12 per coefficient.
bool mate_check(const BiPoly& phi, const BiPoly& a, double tol = 1e-12);

enum class DecompForm { Ex1, Ex2, Ex3 };

// Constructive decomposition witness:
//   Ex1: f = (z1 - 1) f1(z) + f2(z2)              (f3 absent)
//   Ex2: f = f1(z1) + f2(z2) + (z1 z2 - 1) f3(z)
//   Ex3: f = f1(z1) + f2(z2) + (z1 - z2) f3(z)
// f1 is one-variable in z1 for Ex2/Ex3 (bivariate cofactor for Ex1), f2 is
// one-variable in z2.
struct Decomposition {
  DecompForm form = DecompForm::Ex1;
  BiPoly f1;
  BiPoly f2;
  std::optional<BiPoly> f3;
};

// Canonical split against z1 - 1: f2(z2) = f(1, z2), f1 the exact cofactor.
Decomposition decompose_ex1(const BiPoly& f);
// Split via the Laurent restriction t -> (t, 1/t); constants go to f1.
Decomposition decompose_ex2(const BiPoly& f);
// Canonical choice: f1 = diagonal restriction f(z1, z1), f2 = 0.
Decomposition decompose_ex3(const BiPoly& f);

// Exact reconstruction by the form's formula.
BiPoly assemble(const Decomposition& d);

// The multiplier-sufficiency companion function:
//   Ex1: g = z1 f1 + f2
//   Ex2: g = f1 + f2 + z1 z2 f3
//   Ex3: g = z1 f1 - z2 f2 + z1 z2 f3
BiPoly g_function(const Decomposition& d);

struct PreimageResult {
  BiPoly h;
  double residual = 0.0;
};

// Least-squares solve of toeplitz(conj(a), N) h = f over the degree-N box.
// The residual reports failure; truncations of T_{conj a} can be
// rank-deficient, so least squares is the honest contract.
PreimageResult mate_preimage(const BiPoly& f, const BiPoly& a, int N);

struct ComEstimate {
  // 1 / max delta_S: an upper bound on the largest constant k such that
  // every c in [0, k] keeps B = (phi, c psi) inside the positive-kernel
  // class. Finite sampling only; never the exact constant.
  double k = 0.0;
  double delta_max = 0.0;
  int argmax_index = -1;
  double sup_grid = 0.0;
  // k * sup_norm_grid(psi, 64) <= 1 + 1e-6; false means S_list was too weak
  // for the pencil to capture the sup norm.
  bool consistent = false;
};

// Multiplier-norm pencil over the given sets against DBR2(phi). psi must be
// nonzero (DegenerateSymbol otherwise).
ComEstimate theorem_com_k(const BiPoly& phi, const BiPoly& psi,
                          const std::vector<PointSet>& S_list);

// Default set family for the pencil sweep: two-point axis configurations
// (which already make the pencil reach coordinate-multiplier norms), an
// axis ladder, and nested random sets of growing size.
std::vector<PointSet> default_com_sets(std::uint64_t seed);

}  // namespace bidisk
