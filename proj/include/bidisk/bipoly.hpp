#pragma once

#include <complex>
#include <map>
#include <utility>

namespace bidisk {

using Complex = std::complex<double>;

// Exponent pair of a monomial z1^i z2^j. BiPoly uses i, j >= 0; TrigPoly
// allows any sign. Map ordering is plain lexicographic; the graded-lex order
// needed by exact division is computed where required, not baked in here.
struct MonoKey {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const MonoKey&, const MonoKey&) = default;
};

// A point of the open bidisk. Construction enforces |z1| < 1, |z2| < 1.
struct Point2 {
  Complex z1;
  Complex z2;
  Point2(Complex z1_, Complex z2_);
};

// Finitely supported bivariate analytic polynomial sum c_ij z1^i z2^j.
// Canonical form: no stored coefficient is exactly zero. Immutable in
// spirit — all operations return new values.
class BiPoly {
 public:
  using TermMap = std::map<MonoKey, Complex>;

  BiPoly() = default;

  static BiPoly constant(Complex c);
  // c * z1^i z2^j
  static BiPoly monomial(int i, int j, Complex c = Complex(1.0, 0.0));
  // z1 (var = 1) or z2 (var = 2)
  static BiPoly variable(int var);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coeff(int i, int j) const;
  // Max exponent of z1 resp. z2; 0 for the zero polynomial.
  int deg1() const;
  int deg2() const;
  double max_abs_coeff() const;
  // True when every term has zero exponent in the *other* variable.
  bool is_one_variable(int var) const;

  Complex eval(Complex z1, Complex z2) const;
  Complex eval(const Point2& z) const { return eval(z.z1, z.z2); }

  BiPoly operator+(const BiPoly& rhs) const;
  BiPoly operator-(const BiPoly& rhs) const;
  BiPoly operator*(const BiPoly& rhs) const;
  BiPoly operator-() const;
  BiPoly operator*(Complex scalar) const;
  friend BiPoly operator*(Complex scalar, const BiPoly& p) { return p * scalar; }
  bool operator==(const BiPoly& rhs) const { return terms_ == rhs.terms_; }

  // Inserts/accumulates a term, keeping canonical form. Negative exponents
  // are rejected.
  void add_term(int i, int j, Complex c);

 private:
  TermMap terms_;
};

// Finitely supported Laurent polynomial on the torus, sum c_mn z1^m z2^n
// with |z1| = |z2| = 1. Same canonical-form convention as BiPoly.
class TrigPoly {
 public:
  using TermMap = std::map<MonoKey, Complex>;

  TrigPoly() = default;

  static TrigPoly constant(Complex c);
  static TrigPoly monomial(int m, int n, Complex c = Complex(1.0, 0.0));

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coeff(int m, int n) const;
  // Max of max(|m|, |n|) over support; 0 when zero.
  int component_degree() const;
  double max_abs_coeff() const;

  Complex eval(Complex z1, Complex z2) const;

  TrigPoly operator+(const TrigPoly& rhs) const;
  TrigPoly operator-(const TrigPoly& rhs) const;
  TrigPoly operator*(const TrigPoly& rhs) const;  // exact convolution
  TrigPoly operator*(Complex scalar) const;

  void add_term(int m, int n, Complex c);

 private:
  TermMap terms_;
};

// --- shift / projection operators -----------------------------------------

// p composed with the coordinate map that zeroes z_j (j = 1 or 2): keeps
// only monomials with zero z_j-exponent.
BiPoly project(const BiPoly& p, int j);

// Backward shift (f - f o P_j) / z_j: drop monomials with zero
// z_j-exponent, then divide by z_j. Exact.
BiPoly backward_shift(const BiPoly& p, int j);

// p(phi(z), psi(z)) with every monomial of z1- or z2-degree exceeding `cap`
// discarded. Truncation to the box is compatible with multiplication, so
// the kept coefficients are exact.
BiPoly compose(const BiPoly& p, const BiPoly& phi, const BiPoly& psi, int cap);

// Quotient q with q*d = p, by multivariate division under graded
// lexicographic order with z1 > z2. The remainder must vanish: any
// remainder coefficient of magnitude > rem_tol * max(1, max|coeff(p)|)
// raises NotDivisible. rem_tol = 0 demands exact cancellation.
BiPoly divide_exact(const BiPoly& p, const BiPoly& d, double rem_tol = 0.0);

// --- torus operations -------------------------------------------------------

// A BiPoly viewed as a function on the torus.
TrigPoly embed(const BiPoly& p);

// t(z) -> conj(t(z)) on the torus: coefficient at (m, n) becomes the
// conjugated coefficient at (-m, -n).
TrigPoly conj(const TrigPoly& t);

// Max of |p| over the n x n uniform grid on the torus (n >= 2). By the
// maximum principle this lower-bounds, and with n -> oo attains, the sup of
// |p| over the closed bidisk.
double sup_norm_grid(const BiPoly& p, int n);
double sup_norm_grid(const TrigPoly& t, int n);

}  // namespace bidisk
