#include "bidisk/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bidisk/errors.hpp"

namespace bidisk {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex ipow(Complex base, int e) {
  Complex r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

void check_var(int var) {
  if (var != 1 && var != 2) {
    throw std::invalid_argument("variable index must be 1 or 2");
  }
}

// Graded lexicographic comparison with z1 > z2: total degree first, then
// larger z1-exponent wins.
bool grlex_less(const MonoKey& a, const MonoKey& b) {
  const int da = a.i + a.j;
  const int db = b.i + b.j;
  if (da != db) return da < db;
  return a.i < b.i;
}

}  // namespace

Point2::Point2(Complex z1_, Complex z2_) : z1(z1_), z2(z2_) {
  if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0)) {
    throw std::invalid_argument("Point2: coordinates must lie strictly inside the unit disk");
  }
}

// --- BiPoly ------------------------------------------------------------------

BiPoly BiPoly::constant(Complex c) {
  BiPoly p;
  p.add_term(0, 0, c);
  return p;
}

BiPoly BiPoly::monomial(int i, int j, Complex c) {
  BiPoly p;
  p.add_term(i, j, c);
  return p;
}

BiPoly BiPoly::variable(int var) {
  check_var(var);
  return var == 1 ? monomial(1, 0) : monomial(0, 1);
}

void BiPoly::add_term(int i, int j, Complex c) {
  if (i < 0 || j < 0) {
    throw std::invalid_argument("BiPoly: exponents must be nonnegative");
  }
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(MonoKey{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

Complex BiPoly::coeff(int i, int j) const {
  const auto it = terms_.find(MonoKey{i, j});
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

int BiPoly::deg1() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.i);
  return d;
}

int BiPoly::deg2() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.j);
  return d;
}

double BiPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool BiPoly::is_one_variable(int var) const {
  check_var(var);
  for (const auto& [k, c] : terms_) {
    if (var == 1 && k.j != 0) return false;
    if (var == 2 && k.i != 0) return false;
  }
  return true;
}

Complex BiPoly::eval(Complex z1, Complex z2) const {
  if (terms_.empty()) return {0.0, 0.0};
  // Horner over z1-rows, Horner in z2 inside each row; reverse map order
  // walks terms in descending (i, j).
  Complex acc(0.0, 0.0);
  auto it = terms_.rbegin();
  const auto rend = terms_.rend();
  int prev_i = it->first.i;
  while (it != rend) {
    const int i = it->first.i;
    Complex row(0.0, 0.0);
    int prev_j = it->first.j;
    while (it != rend && it->first.i == i) {
      row = row * ipow(z2, prev_j - it->first.j) + it->second;
      prev_j = it->first.j;
      ++it;
    }
    row *= ipow(z2, prev_j);
    acc = acc * ipow(z1, prev_i - i) + row;
    prev_i = i;
  }
  return acc * ipow(z1, prev_i);
}

BiPoly BiPoly::operator+(const BiPoly& rhs) const {
  BiPoly r = *this;
  for (const auto& [k, c] : rhs.terms_) r.add_term(k.i, k.j, c);
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& rhs) const {
  BiPoly r = *this;
  for (const auto& [k, c] : rhs.terms_) r.add_term(k.i, k.j, -c);
  return r;
}

BiPoly BiPoly::operator*(const BiPoly& rhs) const {
  BiPoly r;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : rhs.terms_) {
      r.add_term(ka.i + kb.i, ka.j + kb.j, ca * cb);
    }
  }
  return r;
}

BiPoly BiPoly::operator-() const {
  BiPoly r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

BiPoly BiPoly::operator*(Complex scalar) const {
  BiPoly r;
  if (scalar == Complex(0.0, 0.0)) return r;
  for (const auto& [k, c] : terms_) {
    const Complex v = c * scalar;
    if (v != Complex(0.0, 0.0)) r.terms_.emplace(k, v);
  }
  return r;
}

// --- TrigPoly ----------------------------------------------------------------

TrigPoly TrigPoly::constant(Complex c) {
  TrigPoly t;
  t.add_term(0, 0, c);
  return t;
}

TrigPoly TrigPoly::monomial(int m, int n, Complex c) {
  TrigPoly t;
  t.add_term(m, n, c);
  return t;
}

void TrigPoly::add_term(int m, int n, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(MonoKey{m, n}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

Complex TrigPoly::coeff(int m, int n) const {
  const auto it = terms_.find(MonoKey{m, n});
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

int TrigPoly::component_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) {
    d = std::max({d, std::abs(k.i), std::abs(k.j)});
  }
  return d;
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Complex TrigPoly::eval(Complex z1, Complex z2) const {
  // Direct summation; negative powers use the reciprocal (points are on
  // the torus in every intended use, where 1/z = conj(z)).
  Complex acc(0.0, 0.0);
  for (const auto& [k, c] : terms_) {
    const Complex a = k.i >= 0 ? ipow(z1, k.i) : ipow(Complex(1.0, 0.0) / z1, -k.i);
    const Complex b = k.j >= 0 ? ipow(z2, k.j) : ipow(Complex(1.0, 0.0) / z2, -k.j);
    acc += c * a * b;
  }
  return acc;
}

TrigPoly TrigPoly::operator+(const TrigPoly& rhs) const {
  TrigPoly r = *this;
  for (const auto& [k, c] : rhs.terms_) r.add_term(k.i, k.j, c);
  return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& rhs) const {
  TrigPoly r = *this;
  for (const auto& [k, c] : rhs.terms_) r.add_term(k.i, k.j, -c);
  return r;
}

TrigPoly TrigPoly::operator*(const TrigPoly& rhs) const {
  TrigPoly r;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : rhs.terms_) {
      r.add_term(ka.i + kb.i, ka.j + kb.j, ca * cb);
    }
  }
  return r;
}

TrigPoly TrigPoly::operator*(Complex scalar) const {
  TrigPoly r;
  if (scalar == Complex(0.0, 0.0)) return r;
  for (const auto& [k, c] : terms_) r.add_term(k.i, k.j, c * scalar);
  return r;
}

// --- shift / projection ------------------------------------------------------

BiPoly project(const BiPoly& p, int j) {
  check_var(j);
  BiPoly r;
  for (const auto& [k, c] : p.terms()) {
    const int e = (j == 1) ? k.i : k.j;
    if (e == 0) r.add_term(k.i, k.j, c);
  }
  return r;
}

BiPoly backward_shift(const BiPoly& p, int j) {
  check_var(j);
  BiPoly r;
  for (const auto& [k, c] : p.terms()) {
    if (j == 1 && k.i > 0) r.add_term(k.i - 1, k.j, c);
    if (j == 2 && k.j > 0) r.add_term(k.i, k.j - 1, c);
  }
  return r;
}

namespace {

BiPoly mul_box(const BiPoly& a, const BiPoly& b, int cap) {
  BiPoly r;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const int i = ka.i + kb.i;
      const int j = ka.j + kb.j;
      if (i > cap || j > cap) continue;
      r.add_term(i, j, ca * cb);
    }
  }
  return r;
}

}  // namespace

BiPoly compose(const BiPoly& p, const BiPoly& phi, const BiPoly& psi, int cap) {
  if (cap < 0) throw std::invalid_argument("compose: cap must be nonnegative");
  const int d1 = p.deg1();
  const int d2 = p.deg2();
  // Powers of phi and psi, truncated to the box as they grow. Dropped
  // monomials can only ever feed monomials outside the box, so the kept
  // part stays exact.
  std::vector<BiPoly> phi_pow(static_cast<std::size_t>(d1) + 1);
  std::vector<BiPoly> psi_pow(static_cast<std::size_t>(d2) + 1);
  phi_pow[0] = BiPoly::constant(1.0);
  psi_pow[0] = BiPoly::constant(1.0);
  for (int i = 1; i <= d1; ++i) phi_pow[i] = mul_box(phi_pow[i - 1], phi, cap);
  for (int j = 1; j <= d2; ++j) psi_pow[j] = mul_box(psi_pow[j - 1], psi, cap);

  BiPoly r;
  for (const auto& [k, c] : p.terms()) {
    const BiPoly term = mul_box(phi_pow[k.i], psi_pow[k.j], cap);
    for (const auto& [kt, ct] : term.terms()) r.add_term(kt.i, kt.j, c * ct);
  }
  return r;
}

BiPoly divide_exact(const BiPoly& p, const BiPoly& d, double rem_tol) {
  if (d.is_zero()) throw std::invalid_argument("divide_exact: divisor is zero");

  const auto leading = [](const BiPoly::TermMap& terms) {
    auto best = terms.begin();
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      if (grlex_less(best->first, it->first)) best = it;
    }
    return best;
  };

  const auto lt_d = leading(d.terms());
  const MonoKey dk = lt_d->first;
  const Complex dc = lt_d->second;
  // Divisor with its leading term removed; the reduction step deletes the
  // dividend's leading term outright so inexact cancellation cannot stall
  // the loop.
  BiPoly d_tail = d;
  d_tail.add_term(dk.i, dk.j, -dc);

  BiPoly work = p;
  BiPoly quotient;
  BiPoly remainder;

  while (!work.is_zero()) {
    const auto lt = leading(work.terms());
    const MonoKey wk = lt->first;
    const Complex wc = lt->second;
    if (wk.i >= dk.i && wk.j >= dk.j) {
      const MonoKey qk{wk.i - dk.i, wk.j - dk.j};
      const Complex qc = wc / dc;
      quotient.add_term(qk.i, qk.j, qc);
      work.add_term(wk.i, wk.j, -wc);  // exact removal of the leading term
      for (const auto& [tk, tc] : d_tail.terms()) {
        work.add_term(qk.i + tk.i, qk.j + tk.j, -qc * tc);
      }
    } else {
      remainder.add_term(wk.i, wk.j, wc);
      work.add_term(wk.i, wk.j, -wc);
    }
  }

  const double scale = std::max(1.0, p.max_abs_coeff());
  if (remainder.max_abs_coeff() > rem_tol * scale) {
    throw NotDivisible("divide_exact: nonzero remainder");
  }
  return quotient;
}

// --- torus operations ----------------------------------------------------------

TrigPoly embed(const BiPoly& p) {
  TrigPoly t;
  for (const auto& [k, c] : p.terms()) t.add_term(k.i, k.j, c);
  return t;
}

TrigPoly conj(const TrigPoly& t) {
  TrigPoly r;
  for (const auto& [k, c] : t.terms()) r.add_term(-k.i, -k.j, std::conj(c));
  return r;
}

namespace {

template <typename Poly>
double grid_max(const Poly& p, int n) {
  if (n < 2) throw std::invalid_argument("sup_norm_grid: n must be >= 2");
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n;
    roots[k] = Complex(std::cos(theta), std::sin(theta));
  }
  double best = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      best = std::max(best, std::abs(p.eval(roots[a], roots[b])));
    }
  }
  return best;
}

}  // namespace

double sup_norm_grid(const BiPoly& p, int n) { return grid_max(p, n); }
double sup_norm_grid(const TrigPoly& t, int n) { return grid_max(t, n); }

}  // namespace bidisk
