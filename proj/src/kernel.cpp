#include "bidisk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bidisk/errors.hpp"

namespace bidisk {

namespace {

constexpr double kNormSlack = 1.0 + 1e-9;

void check_symbol_norm(const BiPoly& p, const char* name) {
  if (sup_norm_grid(p, 64) > kNormSlack) {
    throw std::invalid_argument(std::string("KernelExpr: sup norm of ") + name +
                                " exceeds 1");
  }
}

}  // namespace

struct KernelExpr::Node {
  Kind kind = Kind::Szego;
  BiPoly poly_a;  // phi / b / f
  BiPoly poly_b;  // psi
  int var = 0;
  int alpha = 0;
  double c = 0.0;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;

  static Complex eval(const Node* n, const Point2& z, const Point2& w);
};

KernelExpr KernelExpr::szego() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Szego;
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::one_var_dbr(BiPoly b, int var) {
  if (var != 1 && var != 2) {
    throw std::invalid_argument("one_var_dbr: var must be 1 or 2");
  }
  if (!b.is_one_variable(var)) {
    throw std::invalid_argument("one_var_dbr: b must depend on the declared variable only");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::OneVarDBR;
  n->poly_a = std::move(b);
  n->var = var;
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::dbr2(BiPoly phi) {
  check_symbol_norm(phi, "phi");
  auto n = std::make_shared<Node>();
  n->kind = Kind::DBR2;
  n->poly_a = std::move(phi);
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::r_kernel(BiPoly phi, BiPoly psi) {
  check_symbol_norm(phi, "phi");
  check_symbol_norm(psi, "psi");
  auto n = std::make_shared<Node>();
  n->kind = Kind::RKernel;
  n->poly_a = std::move(phi);
  n->poly_b = std::move(psi);
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::sum(KernelExpr left, KernelExpr right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::product(KernelExpr left, KernelExpr right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::power(KernelExpr base, int alpha) {
  if (alpha < 1) throw std::invalid_argument("power: alpha must be a positive integer");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->alpha = alpha;
  n->left = std::move(base.node_);
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::conj_mult(BiPoly f, KernelExpr base) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ConjMult;
  n->poly_a = std::move(f);
  n->left = std::move(base.node_);
  return KernelExpr(std::move(n));
}

KernelExpr KernelExpr::scalar(double c, KernelExpr base) {
  if (c < 0.0) throw std::invalid_argument("scalar: c must be nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scalar;
  n->c = c;
  n->left = std::move(base.node_);
  return KernelExpr(std::move(n));
}

KernelExpr::Kind KernelExpr::kind() const { return node_->kind; }
const BiPoly& KernelExpr::phi() const { return node_->poly_a; }
const BiPoly& KernelExpr::psi() const { return node_->poly_b; }
const BiPoly& KernelExpr::b() const { return node_->poly_a; }
const BiPoly& KernelExpr::f() const { return node_->poly_a; }
int KernelExpr::var() const { return node_->var; }
int KernelExpr::alpha() const { return node_->alpha; }
double KernelExpr::scalar_c() const { return node_->c; }

KernelExpr KernelExpr::left() const {
  if (!node_->left) throw std::logic_error("KernelExpr: node has no left child");
  return KernelExpr(node_->left);
}

KernelExpr KernelExpr::right() const {
  if (!node_->right) throw std::logic_error("KernelExpr: node has no right child");
  return KernelExpr(node_->right);
}

KernelExpr KernelExpr::base() const { return left(); }

Complex KernelExpr::eval(const Point2& z, const Point2& w) const {
  return Node::eval(node_.get(), z, w);
}

namespace {

Complex szego_factor(Complex zv, Complex wv) {
  return Complex(1.0, 0.0) / (Complex(1.0, 0.0) - std::conj(wv) * zv);
}

}  // namespace

Complex KernelExpr::Node::eval(const Node* n, const Point2& z, const Point2& w) {
  using Kind = KernelExpr::Kind;
  switch (n->kind) {
    case Kind::Szego:
      return szego_factor(z.z1, w.z1) * szego_factor(z.z2, w.z2);
    case Kind::OneVarDBR: {
      const Complex bz = n->poly_a.eval(z.z1, z.z2);
      const Complex bw = n->poly_a.eval(w.z1, w.z2);
      const Complex zv = n->var == 1 ? z.z1 : z.z2;
      const Complex wv = n->var == 1 ? w.z1 : w.z2;
      return (Complex(1.0, 0.0) - std::conj(bw) * bz) * szego_factor(zv, wv);
    }
    case Kind::DBR2: {
      const Complex pz = n->poly_a.eval(z.z1, z.z2);
      const Complex pw = n->poly_a.eval(w.z1, w.z2);
      return (Complex(1.0, 0.0) - std::conj(pw) * pz) * szego_factor(z.z1, w.z1) *
             szego_factor(z.z2, w.z2);
    }
    case Kind::RKernel: {
      const Complex pz = n->poly_a.eval(z.z1, z.z2);
      const Complex pw = n->poly_a.eval(w.z1, w.z2);
      const Complex qz = n->poly_b.eval(z.z1, z.z2);
      const Complex qw = n->poly_b.eval(w.z1, w.z2);
      return (Complex(1.0, 0.0) - std::conj(pw) * pz) * szego_factor(z.z1, w.z1) *
             (Complex(1.0, 0.0) - std::conj(qw) * qz) * szego_factor(z.z2, w.z2);
    }
    case Kind::Sum:
      return eval(n->left.get(), z, w) + eval(n->right.get(), z, w);
    case Kind::Product:
      return eval(n->left.get(), z, w) * eval(n->right.get(), z, w);
    case Kind::Power: {
      const Complex v = eval(n->left.get(), z, w);
      Complex r(1.0, 0.0);
      for (int k = 0; k < n->alpha; ++k) r *= v;
      return r;
    }
    case Kind::ConjMult: {
      const Complex fz = n->poly_a.eval(z.z1, z.z2);
      const Complex fw = n->poly_a.eval(w.z1, w.z2);
      return std::conj(fw) * fz * eval(n->left.get(), z, w);
    }
    case Kind::Scalar:
      return n->c * eval(n->left.get(), z, w);
  }
  throw std::logic_error("KernelExpr: unknown node kind");
}

Complex kernel_eval(const KernelExpr& K, const Point2& z, const Point2& w) {
  return K.eval(z, w);
}

std::string KernelExpr::tag() const {
  switch (node_->kind) {
    case Kind::Szego: return "szego";
    case Kind::OneVarDBR: return "one_var_dbr";
    case Kind::DBR2: return "dbr2";
    case Kind::RKernel: return "r_kernel";
    case Kind::Sum: return "sum";
    case Kind::Product: return "product";
    case Kind::Power: return "power";
    case Kind::ConjMult: return "conj_mult";
    case Kind::Scalar: return "scalar";
  }
  return "unknown";
}

// --- PointSet ----------------------------------------------------------------

namespace {

double point_dist(const Point2& a, const Point2& b) {
  return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2));
}

}  // namespace

PointSet::PointSet(std::vector<Point2> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("PointSet: empty");
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a + 1; b < points_.size(); ++b) {
      if (point_dist(points_[a], points_[b]) <= 0.0) {
        throw std::invalid_argument("PointSet: points must be pairwise distinct");
      }
    }
  }
}

PointSet PointSet::sample(Rng& rng, int size, double radius) {
  if (size < 1) throw std::invalid_argument("PointSet::sample: size must be >= 1");
  constexpr double kMinSep = 1e-6;
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(size));
  while (static_cast<int>(pts.size()) < size) {
    const Point2 cand(rng.in_disk(radius), rng.in_disk(radius));
    bool ok = true;
    for (const auto& p : pts) {
      if (point_dist(p, cand) < kMinSep) {
        ok = false;
        break;
      }
    }
    if (ok) pts.push_back(cand);
  }
  return PointSet(std::move(pts));
}

PointSet PointSet::with_point(const Point2& p) const {
  std::vector<Point2> pts = points_;
  pts.push_back(p);
  return PointSet(std::move(pts));
}

// --- HermMatrix / psd_check ---------------------------------------------------

HermMatrix::HermMatrix(const CMat& raw) {
  if (raw.rows() != raw.cols()) throw std::invalid_argument("HermMatrix: not square");
  mat_ = 0.5 * (raw + raw.adjoint());
}

HermMatrix gram(const KernelExpr& K, const PointSet& S) {
  const int n = S.size();
  CMat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = K.eval(S[i], S[j]);
    }
  }
  return HermMatrix(m);
}

PsdVerdict psd_check(const HermMatrix& M, double tol) {
  if (tol < 0.0) throw std::invalid_argument("psd_check: tol must be nonnegative");
  Eigen::SelfAdjointEigenSolver<CMat> es(M.mat());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("psd_check: eigensolver failed");
  }
  PsdVerdict v;
  v.min_eig = es.eigenvalues()(0);
  const double threshold = -tol * std::max(1.0, M.trace_real());
  if (v.min_eig < threshold) {
    v.status = PsdVerdict::Status::NotPSD;
    v.certificate = es.eigenvectors().col(0);
  } else {
    v.status = PsdVerdict::Status::PSD;
  }
  return v;
}

// --- screens -------------------------------------------------------------------

PositivityScreen positivity_test(const KernelExpr& K, int trials, int set_size,
                                 std::uint64_t seed, double tol) {
  if (trials < 1 || set_size < 1) {
    throw std::invalid_argument("positivity_test: trials and set_size must be >= 1");
  }
  PositivityScreen out;
  double worst_scaled = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(t));
    const int size = rng.uniform_int(1, set_size);
    const PointSet S = PointSet::sample(rng, size);
    const HermMatrix G = gram(K, S);
    const PsdVerdict v = psd_check(G, tol);
    out.trials_run = t + 1;
    const double scaled = v.min_eig / std::max(1.0, G.trace_real());
    if (scaled < worst_scaled) {
      worst_scaled = scaled;
      out.worst_min_eig = v.min_eig;
      out.worst_trace = G.trace_real();
      out.worst_set = S;
    }
    if (v.status == PsdVerdict::Status::NotPSD) {
      out.counterexample_found = true;
      out.certificate = NegativityCertificate{S, *v.certificate, v.min_eig};
      break;
    }
  }
  return out;
}

namespace {

struct EigProbe {
  double min_eig = 0.0;
  double trace = 0.0;
  CVec vec;
};

EigProbe probe_min_eig(const KernelExpr& K, const PointSet& S) {
  const HermMatrix G = gram(K, S);
  Eigen::SelfAdjointEigenSolver<CMat> es(G.mat());
  EigProbe p;
  p.min_eig = es.eigenvalues()(0);
  p.trace = G.trace_real();
  p.vec = es.eigenvectors().col(0);
  return p;
}

// Move one real coordinate of one point, clamping the touched disk
// coordinate back to radius 0.99 so the point stays strictly interior.
bool shifted_config(const std::vector<Point2>& pts, int point, int coord,
                    double delta, std::vector<Point2>* out) {
  Complex z1 = pts[static_cast<std::size_t>(point)].z1;
  Complex z2 = pts[static_cast<std::size_t>(point)].z2;
  switch (coord) {
    case 0: z1 += Complex(delta, 0.0); break;
    case 1: z1 += Complex(0.0, delta); break;
    case 2: z2 += Complex(delta, 0.0); break;
    default: z2 += Complex(0.0, delta); break;
  }
  constexpr double kMaxR = 0.99;
  if (std::abs(z1) > kMaxR) z1 *= kMaxR / std::abs(z1);
  if (std::abs(z2) > kMaxR) z2 *= kMaxR / std::abs(z2);
  std::vector<Point2> cand = pts;
  cand[static_cast<std::size_t>(point)] = Point2(z1, z2);
  for (std::size_t a = 0; a < cand.size(); ++a) {
    for (std::size_t b = a + 1; b < cand.size(); ++b) {
      if (point_dist(cand[a], cand[b]) < 1e-8) return false;
    }
  }
  *out = std::move(cand);
  return true;
}

}  // namespace

std::optional<NegativityCertificate> negativity_search(const KernelExpr& K,
                                                       int n_points, int restarts,
                                                       std::uint64_t seed,
                                                       long max_evals, double tol) {
  if (n_points < 2) throw std::invalid_argument("negativity_search: n_points must be >= 2");
  if (restarts < 1) throw std::invalid_argument("negativity_search: restarts must be >= 1");

  long evals = 0;
  std::optional<NegativityCertificate> best;
  double best_scaled = 0.0;

  for (int r = 0; r < restarts && evals < max_evals; ++r) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(r));
    std::vector<Point2> pts = PointSet::sample(rng, n_points).points();
    EigProbe cur = probe_min_eig(K, PointSet(pts));
    ++evals;

    double step = 0.1;
    while (step >= 1e-4 && evals < max_evals) {
      bool improved = false;
      for (int p = 0; p < n_points && evals < max_evals; ++p) {
        for (int coord = 0; coord < 4 && evals < max_evals; ++coord) {
          for (const double sgn : {1.0, -1.0}) {
            if (evals >= max_evals) break;
            std::vector<Point2> cand;
            if (!shifted_config(pts, p, coord, sgn * step, &cand)) continue;
            const EigProbe probe = probe_min_eig(K, PointSet(cand));
            ++evals;
            if (probe.min_eig < cur.min_eig) {
              pts = std::move(cand);
              cur = probe;
              improved = true;
              break;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }

    const double scaled = cur.min_eig / std::max(1.0, cur.trace);
    if (scaled < best_scaled && scaled < -tol) {
      best_scaled = scaled;
      best = NegativityCertificate{PointSet(pts), cur.vec, cur.min_eig};
    }
  }
  return best;
}

// --- pencils --------------------------------------------------------------------

double largest_gen_eig(const HermMatrix& B, const HermMatrix& A) {
  if (A.dim() != B.dim()) throw std::invalid_argument("largest_gen_eig: dimension mismatch");
  const double tr = A.trace_real();
  if (!std::isfinite(tr) || tr <= 0.0) {
    throw SingularPencil("largest_gen_eig: right-hand Gram has nonpositive trace");
  }

  Eigen::LLT<CMat> llt(A.mat());
  CMat a = A.mat();
  if (llt.info() != Eigen::Success) {
    const double eps = 1e-12 * tr;
    a.diagonal().array() += eps;
    llt.compute(a);
    if (llt.info() != Eigen::Success) {
      throw SingularPencil("largest_gen_eig: Gram matrix numerically singular");
    }
  }

  // Reduce to the ordinary Hermitian problem L^{-1} B L^{-*}.
  const auto L = llt.matrixL();
  CMat m = L.solve(B.mat());
  m = L.solve(m.adjoint()).adjoint().eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()),
                                         Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw SingularPencil("largest_gen_eig: reduced eigenproblem failed");
  }
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double membership_norm(const BiPoly& f, const KernelExpr& K, const PointSet& S) {
  const HermMatrix A = gram(K, S);
  const int n = S.size();
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = f.eval(S[i]);
  const HermMatrix B(CMat(v * v.adjoint()));
  return std::sqrt(std::max(0.0, largest_gen_eig(B, A)));
}

double multiplier_norm_lb(const BiPoly& psi, const KernelExpr& K, const PointSet& S) {
  const HermMatrix A = gram(K, S);
  const int n = S.size();
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = psi.eval(S[i]);
  const CMat b = v.asDiagonal() * A.mat() * v.adjoint().asDiagonal();
  return std::sqrt(std::max(0.0, largest_gen_eig(HermMatrix(b), A)));
}

double dominance_delta(const KernelExpr& K1, const KernelExpr& K2, const PointSet& S) {
  const HermMatrix B = gram(K1, S);
  const HermMatrix A = gram(K2, S);
  return std::sqrt(std::max(0.0, largest_gen_eig(B, A)));
}

}  // namespace bidisk
