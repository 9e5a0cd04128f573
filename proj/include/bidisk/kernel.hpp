#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bidisk/bipoly.hpp"
#include "bidisk/rng.hpp"

namespace bidisk {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Immutable expression tree of point-pair kernels on the bidisk. Every node
// evaluates to a self-adjoint kernel K(z,w) = conj(K(w,z)).
class KernelExpr {
 public:
  enum class Kind {
    Szego,      // 1 / ((1 - conj(w1) z1)(1 - conj(w2) z2))
    OneVarDBR,  // (1 - conj(b(w)) b(z)) / (1 - conj(w_v) z_v), b one-variable
    DBR2,       // (1 - conj(phi(w)) phi(z)) * Szego
    RKernel,    // (1-conj(phi(w))phi(z))/(1-conj(w1)z1) * (1-conj(psi(w))psi(z))/(1-conj(w2)z2)
    Sum,
    Product,
    Power,     // integer power alpha >= 1
    ConjMult,  // conj(f(w)) f(z) * base
    Scalar,    // c * base, c >= 0
  };

  static KernelExpr szego();
  static KernelExpr one_var_dbr(BiPoly b, int var);
  // Requires sup_norm_grid(phi, 64) <= 1 + 1e-9.
  static KernelExpr dbr2(BiPoly phi);
  // Requires the same bound for both phi and psi.
  static KernelExpr r_kernel(BiPoly phi, BiPoly psi);
  static KernelExpr sum(KernelExpr left, KernelExpr right);
  static KernelExpr product(KernelExpr left, KernelExpr right);
  static KernelExpr power(KernelExpr base, int alpha);
  static KernelExpr conj_mult(BiPoly f, KernelExpr base);
  static KernelExpr scalar(double c, KernelExpr base);

  Kind kind() const;
  // Node payload accessors; each is valid only for the kinds that carry it.
  const BiPoly& phi() const;
  const BiPoly& psi() const;
  const BiPoly& b() const;
  const BiPoly& f() const;
  int var() const;
  int alpha() const;
  double scalar_c() const;
  KernelExpr left() const;
  KernelExpr right() const;
  KernelExpr base() const;

  Complex eval(const Point2& z, const Point2& w) const;
  // Short tag for reports ("szego", "r_kernel", ...).
  std::string tag() const;

 private:
  struct Node;
  explicit KernelExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Complex kernel_eval(const KernelExpr& K, const Point2& z, const Point2& w);

// Ordered list of pairwise-distinct points of the open bidisk.
class PointSet {
 public:
  explicit PointSet(std::vector<Point2> points);
  // `size` points with coordinates uniform in the disk of the given radius,
  // kept pairwise separated.
  static PointSet sample(Rng& rng, int size, double radius = 0.98);

  int size() const { return static_cast<int>(points_.size()); }
  const Point2& operator[](int k) const { return points_[static_cast<std::size_t>(k)]; }
  const std::vector<Point2>& points() const { return points_; }
  PointSet with_point(const Point2& p) const;

 private:
  std::vector<Point2> points_;
};

// Hermitian matrix, symmetrized at construction.
class HermMatrix {
 public:
  explicit HermMatrix(const CMat& raw);
  const CMat& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  double trace_real() const { return mat_.trace().real(); }

 private:
  CMat mat_;
};

struct PsdVerdict {
  enum class Status { PSD, NotPSD };
  Status status = Status::PSD;
  double min_eig = 0.0;
  // Eigenvector of the minimal eigenvalue; present iff NotPSD. Satisfies
  // c* M c = min_eig < 0 up to rounding.
  std::optional<CVec> certificate;
};

// Gram matrix (K(lambda_i, lambda_j))_{ij} on S.
HermMatrix gram(const KernelExpr& K, const PointSet& S);

// PSD iff min eigenvalue >= -tol * max(1, trace). The relative threshold
// matters: Szego-type Gram entries grow near the boundary.
PsdVerdict psd_check(const HermMatrix& M, double tol = 1e-8);

// A point set, coefficient vector and strictly negative Gram quadratic-form
// value: a witness that the kernel is not positive.
struct NegativityCertificate {
  PointSet points;
  CVec coeffs;
  double value = 0.0;
};

struct PositivityScreen {
  // True iff some sampled set produced a NotPSD verdict. A false result is
  // "no counterexample found", never a proof of positivity.
  bool counterexample_found = false;
  double worst_min_eig = 0.0;
  double worst_trace = 0.0;
  std::optional<PointSet> worst_set;
  std::optional<NegativityCertificate> certificate;
  int trials_run = 0;
};

// Randomized screen: `trials` seeded point sets of size <= set_size, each
// put through gram + psd_check. Stops at the first certificate.
PositivityScreen positivity_test(const KernelExpr& K, int trials, int set_size,
                                 std::uint64_t seed, double tol = 1e-8);

// Random restarts plus derivative-free coordinate descent on point
// positions, minimizing the smallest Gram eigenvalue. Returns a certificate
// if a configuration with min eigenvalue < -tol * max(1, trace) was found
// within the evaluation budget.
std::optional<NegativityCertificate> negativity_search(
    const KernelExpr& K, int n_points, int restarts, std::uint64_t seed,
    long max_evals = 10000, double tol = 1e-8);

// Smallest c such that c^2 K - conj(f(w))f(z) stays PSD on S: a lower bound
// for the H(K)-norm of f, nondecreasing in S.
double membership_norm(const BiPoly& f, const KernelExpr& K, const PointSet& S);

// delta_S with delta_S^2 the largest generalized eigenvalue of the pencil
// (conj-mult Gram, Gram): a lower bound for the multiplier norm of psi on
// H(K), nondecreasing in S.
double multiplier_norm_lb(const BiPoly& psi, const KernelExpr& K, const PointSet& S);

// Smallest delta such that gram(K2,S) - (1/delta^2) gram(K1,S) is PSD.
double dominance_delta(const KernelExpr& K1, const KernelExpr& K2, const PointSet& S);

// Largest generalized eigenvalue of (B, A); A is factored (regularized by
// +eps*I, eps = 1e-12 * trace, if not positive definite) and the problem is
// reduced to an ordinary Hermitian one. Throws SingularPencil.
double largest_gen_eig(const HermMatrix& B, const HermMatrix& A);

}  // namespace bidisk
