#pragma once

#include <cmath>
#include <complex>

#include "bidisk/bipoly.hpp"
#include "bidisk/rng.hpp"

namespace testutil {

using bidisk::BiPoly;
using bidisk::Complex;
using bidisk::Rng;
using bidisk::TrigPoly;

inline bool ceq(Complex a, Complex b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

// Random polynomial with Gaussian-integer coefficients in [-range, range]^2,
// exponents bounded per variable. Identity checks on these are exact in
// double arithmetic.
inline BiPoly random_int_bipoly(Rng& rng, int deg1, int deg2, int range = 3,
                                double density = 0.6) {
  BiPoly p;
  for (int i = 0; i <= deg1; ++i) {
    for (int j = 0; j <= deg2; ++j) {
      if (rng.uniform() > density) continue;
      p.add_term(i, j,
                 Complex(rng.uniform_int(-range, range), rng.uniform_int(-range, range)));
    }
  }
  return p;
}

// Random polynomial with total degree <= deg.
inline BiPoly random_int_bipoly_total(Rng& rng, int deg, int range = 3,
                                      double density = 0.6) {
  BiPoly p;
  for (int i = 0; i <= deg; ++i) {
    for (int j = 0; i + j <= deg; ++j) {
      if (rng.uniform() > density) continue;
      p.add_term(i, j,
                 Complex(rng.uniform_int(-range, range), rng.uniform_int(-range, range)));
    }
  }
  return p;
}

inline TrigPoly random_int_trigpoly(Rng& rng, int deg, int range = 2,
                                    double density = 0.5) {
  TrigPoly t;
  for (int m = -deg; m <= deg; ++m) {
    for (int n = -deg; n <= deg; ++n) {
      if (rng.uniform() > density) continue;
      t.add_term(m, n,
                 Complex(rng.uniform_int(-range, range), rng.uniform_int(-range, range)));
    }
  }
  return t;
}

// Max coefficient deviation between two polynomials.
inline double coeff_dev(const BiPoly& a, const BiPoly& b) {
  return (a - b).max_abs_coeff();
}

}  // namespace testutil
