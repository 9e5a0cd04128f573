#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "bidisk/bipoly.hpp"
#include "bidisk/kernel.hpp"

namespace bidisk {

// Ordered enumeration of monomial exponent pairs, with O(log) reverse
// lookup. Rows and columns of every truncated operator matrix carry one of
// these so entries keep their meaning.
class IndexMap {
 public:
  // The box {0..N} x {0..N} in graded lexicographic order (z1 > z2).
  static IndexMap box(int N);
  // The non-analytic window {(m,n): min(m,n) < 0, |m| <= bound, |n| <= bound},
  // lexicographically ordered. Codomain of truncated Hankel operators.
  static IndexMap hankel_window(int bound);

  int size() const { return static_cast<int>(keys_.size()); }
  const MonoKey& at(int pos) const { return keys_[static_cast<std::size_t>(pos)]; }
  // Position of (i,j), or -1 when absent.
  int find(int i, int j) const;
  const std::vector<MonoKey>& keys() const { return keys_; }

 private:
  std::vector<MonoKey> keys_;
  std::map<MonoKey, int> pos_;
  void rebuild_pos();
};

// Dense matrix of a truncated operator in the monomial basis: entry
// (row r, col c) is <A z^{cols.at(c)}, z^{rows.at(r)}> in the L2(T^2)
// pairing.
struct OpMatrix {
  IndexMap rows;
  IndexMap cols;
  CMat entries;
  // False when some column of a composition matrix lost coefficients to the
  // codomain truncation.
  bool lossless = true;
};

// Analytic pair B = (phi, psi) mapping the bidisk into its closure;
// construction checks sup_norm_grid <= 1 + 1e-9 for both components.
struct SymbolPair {
  BiPoly phi;
  BiPoly psi;
  SymbolPair(BiPoly phi_, BiPoly psi_);
};

// Toeplitz matrix on the box {0..N}^2: entry ((k,l),(i,j)) = sym^(k-i, l-j).
OpMatrix toeplitz(const TrigPoly& sym, int N);

// Hankel matrix: domain box {0..N}^2, codomain the non-analytic window with
// bound N + component_degree(sym); entry = sym^(m-i, n-j).
OpMatrix hankel(const TrigPoly& sym, int N);

// Column for z1^i z2^j holds the coefficients of compose(z1^i z2^j, B, M):
// domain box N, codomain box M.
OpMatrix composition_matrix(const SymbolPair& B, int N, int M);

// Codomain cap that makes every composition column loss-free:
// N * max over variables of (deg_v phi + deg_v psi).
int lossless_cap(const SymbolPair& B, int N);

// Apply the matrix to the coefficient vector of p (p must fit the domain
// box); returns the image as coefficients over the codomain index map.
BiPoly apply_to_poly(const OpMatrix& A, const BiPoly& p);

// Largest singular value. Dense SVD up to moderate sizes, power iteration
// on the Gram matrix (relative residual 1e-10) beyond.
double op_norm(const OpMatrix& A);

// Largest eigenvalue of a Hermitian PSD matrix; helper shared by op_norm
// and the fast composition-norm path.
double lambda_max_psd(const CMat& H);

// op_norm of the loss-free composition matrix at each N. Nondecreasing;
// each value lower-bounds ||C_B||. Uses a sparse-column Gram path so large
// boxes stay cheap.
std::vector<double> comp_norm_sequence(const SymbolPair& B, const std::vector<int>& N_list);

// Max absolute deviation of T_{fg} from T_f T_g + H_{conj f}^* H_g over the
// protected sub-block {0..N-d}^2, d the max component degree of f and g.
// The enlarged inner windows keep truncation error out of that block.
double verify_han(const TrigPoly& f, const TrigPoly& g, int N);

// ((1+|phi(0)|)/(1-|phi(0)|))^(1/2) * ((1+|psi(0)|)/(1-|psi(0)|))^(1/2).
// Throws OriginOnBoundary when a factor degenerates.
double theorem_M_bound(const SymbolPair& B);

// The normalized kernel section R(.,0)/sqrt(R(0,0)) as an exact polynomial:
// (1-conj(phi(0))phi)(1-conj(psi(0))psi) / sqrt((1-|phi(0)|^2)(1-|psi(0)|^2)).
BiPoly normalized_F(const SymbolPair& B);

// Applies the truncated defect I - T_phi T_{conj phi} (box N) to the
// truncated Szego kernel at w and evaluates at z; converges to the
// two-variable dBR kernel value as N grows.
Complex dbr_defect_check(const BiPoly& phi, const Point2& w, const Point2& z, int N);

}  // namespace bidisk
