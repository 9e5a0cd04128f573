#include "bidisk/hardy_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bidisk/errors.hpp"

namespace bidisk {

namespace {

constexpr double kNormSlack = 1.0 + 1e-9;

// std::pow(complex, exponent) goes through exp/log and returns NaN at 0^0.
Complex ipow(Complex base, int e) {
  Complex r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

// --- IndexMap ------------------------------------------------------------------

void IndexMap::rebuild_pos() {
  pos_.clear();
  for (int p = 0; p < static_cast<int>(keys_.size()); ++p) pos_[keys_[p]] = p;
}

IndexMap IndexMap::box(int N) {
  if (N < 0) throw std::invalid_argument("IndexMap::box: N must be >= 0");
  IndexMap m;
  m.keys_.reserve(static_cast<std::size_t>(N + 1) * (N + 1));
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= N; ++j) m.keys_.push_back(MonoKey{i, j});
  }
  // graded lex with z1 > z2, ascending
  std::sort(m.keys_.begin(), m.keys_.end(), [](const MonoKey& a, const MonoKey& b) {
    const int da = a.i + a.j, db = b.i + b.j;
    if (da != db) return da < db;
    return a.i < b.i;
  });
  m.rebuild_pos();
  return m;
}

IndexMap IndexMap::hankel_window(int bound) {
  if (bound < 0) throw std::invalid_argument("IndexMap::hankel_window: bound must be >= 0");
  IndexMap m;
  for (int i = -bound; i <= bound; ++i) {
    for (int j = -bound; j <= bound; ++j) {
      if (std::min(i, j) < 0) m.keys_.push_back(MonoKey{i, j});
    }
  }
  m.rebuild_pos();
  return m;
}

int IndexMap::find(int i, int j) const {
  const auto it = pos_.find(MonoKey{i, j});
  return it == pos_.end() ? -1 : it->second;
}

// --- symbol pair ---------------------------------------------------------------

SymbolPair::SymbolPair(BiPoly phi_, BiPoly psi_)
    : phi(std::move(phi_)), psi(std::move(psi_)) {
  if (sup_norm_grid(phi, 64) > kNormSlack || sup_norm_grid(psi, 64) > kNormSlack) {
    throw std::invalid_argument("SymbolPair: components must be bounded by 1");
  }
}

// --- matrix builders -------------------------------------------------------------

OpMatrix toeplitz(const TrigPoly& sym, int N) {
  if (N < 1) throw std::invalid_argument("toeplitz: N must be >= 1");
  OpMatrix A;
  A.rows = IndexMap::box(N);
  A.cols = IndexMap::box(N);
  A.entries = CMat::Zero(A.rows.size(), A.cols.size());
  for (const auto& [k, c] : sym.terms()) {
    for (int col = 0; col < A.cols.size(); ++col) {
      const MonoKey& d = A.cols.at(col);
      const int row = A.rows.find(d.i + k.i, d.j + k.j);
      if (row >= 0) A.entries(row, col) += c;
    }
  }
  return A;
}

namespace {

OpMatrix hankel_with_bound(const TrigPoly& sym, int N, int bound) {
  OpMatrix A;
  A.rows = IndexMap::hankel_window(bound);
  A.cols = IndexMap::box(N);
  A.entries = CMat::Zero(A.rows.size(), A.cols.size());
  for (const auto& [k, c] : sym.terms()) {
    for (int col = 0; col < A.cols.size(); ++col) {
      const MonoKey& d = A.cols.at(col);
      const int row = A.rows.find(d.i + k.i, d.j + k.j);
      if (row >= 0) A.entries(row, col) += c;
    }
  }
  return A;
}

}  // namespace

OpMatrix hankel(const TrigPoly& sym, int N) {
  if (N < 1) throw std::invalid_argument("hankel: N must be >= 1");
  return hankel_with_bound(sym, N, N + sym.component_degree());
}

int lossless_cap(const SymbolPair& B, int N) {
  const int cap1 = B.phi.deg1() + B.psi.deg1();
  const int cap2 = B.phi.deg2() + B.psi.deg2();
  return N * std::max(cap1, cap2);
}

OpMatrix composition_matrix(const SymbolPair& B, int N, int M) {
  if (N < 0 || M < 0) throw std::invalid_argument("composition_matrix: negative box");
  OpMatrix A;
  A.rows = IndexMap::box(M);
  A.cols = IndexMap::box(N);
  A.entries = CMat::Zero(A.rows.size(), A.cols.size());
  A.lossless = M >= lossless_cap(B, N);
  for (int col = 0; col < A.cols.size(); ++col) {
    const MonoKey& d = A.cols.at(col);
    const BiPoly image = compose(BiPoly::monomial(d.i, d.j), B.phi, B.psi, M);
    for (const auto& [k, c] : image.terms()) {
      A.entries(A.rows.find(k.i, k.j), col) = c;
    }
  }
  return A;
}

BiPoly apply_to_poly(const OpMatrix& A, const BiPoly& p) {
  CVec x = CVec::Zero(A.cols.size());
  for (const auto& [k, c] : p.terms()) {
    const int pos = A.cols.find(k.i, k.j);
    if (pos < 0) {
      throw std::invalid_argument("apply_to_poly: polynomial exceeds the domain box");
    }
    x(pos) = c;
  }
  const CVec y = A.entries * x;
  BiPoly out;
  for (int r = 0; r < A.rows.size(); ++r) {
    if (y(r) != Complex(0.0, 0.0)) {
      const MonoKey& k = A.rows.at(r);
      if (k.i < 0 || k.j < 0) {
        throw std::invalid_argument("apply_to_poly: image leaves the analytic range");
      }
      out.add_term(k.i, k.j, y(r));
    }
  }
  return out;
}

// --- norms ------------------------------------------------------------------------

double lambda_max_psd(const CMat& H) {
  const Eigen::Index n = H.rows();
  if (n == 0) return 0.0;
  if (n <= 400) {
    Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues()(n - 1));
  }
  // Power iteration with a residual stop; fine at this accuracy because the
  // matrices here are PSD Gram matrices.
  CVec v(n);
  Rng rng(0x5eedULL);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = Complex(1.0 + rng.uniform(), rng.uniform());
  v.normalize();
  double lam = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    const CVec w = H * v;
    lam = v.dot(w).real();
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    if ((w - lam * v).norm() <= 1e-7 * std::max(lam, 1e-300)) break;
    v = w / wn;
  }
  return std::max(0.0, lam);
}

double op_norm(const OpMatrix& A) {
  const Eigen::Index r = A.entries.rows();
  const Eigen::Index c = A.entries.cols();
  if (r == 0 || c == 0) return 0.0;
  if (std::max(r, c) <= 192) {
    Eigen::JacobiSVD<CMat> svd(A.entries);
    return svd.singularValues()(0);
  }
  const CMat g = (r >= c) ? CMat(A.entries.adjoint() * A.entries)
                          : CMat(A.entries * A.entries.adjoint());
  return std::sqrt(lambda_max_psd(0.5 * (g + g.adjoint())));
}

// --- composition norm sequence ------------------------------------------------------

std::vector<double> comp_norm_sequence(const SymbolPair& B, const std::vector<int>& N_list) {
  if (N_list.empty()) return {};
  for (std::size_t k = 1; k < N_list.size(); ++k) {
    if (N_list[k] <= N_list[k - 1]) {
      throw std::invalid_argument("comp_norm_sequence: N_list must be increasing");
    }
  }
  if (N_list.front() < 0) throw std::invalid_argument("comp_norm_sequence: negative N");

  const int n_max = N_list.back();
  const IndexMap cols = IndexMap::box(n_max);
  const int cap = lossless_cap(B, n_max);

  // Every column at the largest cap is the full expansion (the cap bounds
  // the true degree), so the same columns serve all N.
  std::vector<std::vector<std::pair<MonoKey, Complex>>> col_terms(
      static_cast<std::size_t>(cols.size()));
  for (int c = 0; c < cols.size(); ++c) {
    const MonoKey& d = cols.at(c);
    const BiPoly image = compose(BiPoly::monomial(d.i, d.j), B.phi, B.psi, cap);
    auto& v = col_terms[static_cast<std::size_t>(c)];
    v.assign(image.terms().begin(), image.terms().end());
  }

  // Gram of the columns in the monomial (orthonormal) basis, by sorted-merge
  // dot products.
  const auto dot = [](const std::vector<std::pair<MonoKey, Complex>>& a,
                      const std::vector<std::pair<MonoKey, Complex>>& b) {
    Complex s(0.0, 0.0);
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
      if (a[x].first < b[y].first) {
        ++x;
      } else if (b[y].first < a[x].first) {
        ++y;
      } else {
        s += std::conj(a[x].second) * b[y].second;
        ++x;
        ++y;
      }
    }
    return s;
  };

  CMat G(cols.size(), cols.size());
  for (int a = 0; a < cols.size(); ++a) {
    for (int b = a; b < cols.size(); ++b) {
      const Complex s = dot(col_terms[static_cast<std::size_t>(a)],
                            col_terms[static_cast<std::size_t>(b)]);
      G(a, b) = s;
      G(b, a) = std::conj(s);
    }
  }

  std::vector<double> norms;
  norms.reserve(N_list.size());
  for (const int N : N_list) {
    std::vector<int> sel;
    sel.reserve(static_cast<std::size_t>(N + 1) * (N + 1));
    for (int c = 0; c < cols.size(); ++c) {
      const MonoKey& k = cols.at(c);
      if (k.i <= N && k.j <= N) sel.push_back(c);
    }
    CMat sub(sel.size(), sel.size());
    for (std::size_t a = 0; a < sel.size(); ++a) {
      for (std::size_t b = 0; b < sel.size(); ++b) {
        sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            G(sel[a], sel[b]);
      }
    }
    norms.push_back(std::sqrt(lambda_max_psd(sub)));
  }
  return norms;
}

// --- identity checks ---------------------------------------------------------------

double verify_han(const TrigPoly& f, const TrigPoly& g, int N) {
  const int d = std::max(f.component_degree(), g.component_degree());
  if (N <= d) throw std::invalid_argument("verify_han: N must exceed the symbol degree");

  const OpMatrix t_fg = toeplitz(f * g, N);
  const OpMatrix t_f = toeplitz(f, N);
  const OpMatrix t_g = toeplitz(g, N);
  const OpMatrix h_fbar = hankel_with_bound(conj(f), N, N + d);
  const OpMatrix h_g = hankel_with_bound(g, N, N + d);

  const CMat rhs = t_f.entries * t_g.entries + h_fbar.entries.adjoint() * h_g.entries;

  double dev = 0.0;
  for (int r = 0; r < t_fg.rows.size(); ++r) {
    const MonoKey& rk = t_fg.rows.at(r);
    if (rk.i > N - d || rk.j > N - d) continue;
    for (int c = 0; c < t_fg.cols.size(); ++c) {
      const MonoKey& ck = t_fg.cols.at(c);
      if (ck.i > N - d || ck.j > N - d) continue;
      dev = std::max(dev, std::abs(t_fg.entries(r, c) - rhs(r, c)));
    }
  }
  return dev;
}

double theorem_M_bound(const SymbolPair& B) {
  const double p0 = std::abs(B.phi.coeff(0, 0));
  const double q0 = std::abs(B.psi.coeff(0, 0));
  if (p0 >= 1.0 || q0 >= 1.0) {
    throw OriginOnBoundary("theorem_M_bound: |symbol(0)| = 1");
  }
  return std::sqrt((1.0 + p0) / (1.0 - p0)) * std::sqrt((1.0 + q0) / (1.0 - q0));
}

BiPoly normalized_F(const SymbolPair& B) {
  const Complex p0 = B.phi.coeff(0, 0);
  const Complex q0 = B.psi.coeff(0, 0);
  const double ap = std::norm(p0);
  const double aq = std::norm(q0);
  if (ap >= 1.0 || aq >= 1.0) {
    throw OriginOnBoundary("normalized_F: |symbol(0)| = 1");
  }
  const BiPoly one = BiPoly::constant(1.0);
  const BiPoly left = one - B.phi * std::conj(p0);
  const BiPoly right = one - B.psi * std::conj(q0);
  return (left * right) * Complex(1.0 / std::sqrt((1.0 - ap) * (1.0 - aq)), 0.0);
}

Complex dbr_defect_check(const BiPoly& phi, const Point2& w, const Point2& z, int N) {
  if (N < 1) throw std::invalid_argument("dbr_defect_check: N must be >= 1");
  if (sup_norm_grid(phi, 64) > kNormSlack) {
    throw std::invalid_argument("dbr_defect_check: phi must be bounded by 1");
  }
  const IndexMap box = IndexMap::box(N);
  CVec kw(box.size());
  for (int p = 0; p < box.size(); ++p) {
    const MonoKey& k = box.at(p);
    kw(p) = ipow(std::conj(w.z1), k.i) * ipow(std::conj(w.z2), k.j);
  }
  const TrigPoly sym = embed(phi);
  const OpMatrix t_phi = toeplitz(sym, N);
  const OpMatrix t_phibar = toeplitz(conj(sym), N);
  const CVec v = kw - t_phi.entries * (t_phibar.entries * kw);
  Complex out(0.0, 0.0);
  for (int p = 0; p < box.size(); ++p) {
    const MonoKey& k = box.at(p);
    out += v(p) * ipow(z.z1, k.i) * ipow(z.z2, k.j);
  }
  return out;
}

}  // namespace bidisk
