#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pdproj/numcore.hpp"
#include "pdproj/spaces.hpp"
#include "pdproj/symmetry.hpp"

namespace pdproj {

namespace detail {
struct KernelNode;
}

/// An evaluable Hermitian kernel k : X x X -> C.
///
/// Kernels are immutable expression trees shared by pointer, so copies are
/// cheap and safe to hand to other threads.
class ScalarKernel {
 public:
  /// e^{cos(theta - vartheta)} on the circle.
  static ScalarKernel circle_exp_cos(const Space& s = Space::circle());
  /// e^{-sigma |x - y|^2} on R^m.
  static ScalarKernel gaussian(const Space& s, double sigma);
  /// e^{scale <x, y>} + shift on R^m, or on the complex sphere with
  /// <x, y> = sum x_i conj(y_i).
  static ScalarKernel dot_exp(const Space& s, double scale = 1.0, double shift = 0.0);
  /// prod_m 2 / (2 - e^{i(x_m - y_m)}); coordinates are angles (circle or R^d).
  static ScalarKernel torus_product(const Space& s);
  /// sum_g c_g xi_g(x) conj(xi_g(y)) with c aligned to group_elements(s).
  static ScalarKernel group_fourier(const Space& s, std::vector<Complex> coefficients);
  static ScalarKernel zero(const Space& s);
  /// base(left(x), right(y)); a missing map means the identity.
  static ScalarKernel composed(const ScalarKernel& base, std::optional<SymmetryMap> left,
                               std::optional<SymmetryMap> right);
  /// base + constant.
  static ScalarKernel offset(const ScalarKernel& base, double constant);
  /// sum_t w_t k_t. Every term must live on the same space.
  static ScalarKernel combination(std::vector<std::pair<Complex, ScalarKernel>> terms);

  [[nodiscard]] Complex operator()(const Point& x, const Point& y) const;
  [[nodiscard]] Complex eval(const Point& x, const Point& y) const { return (*this)(x, y); }

  [[nodiscard]] const Space& space() const noexcept;
  [[nodiscard]] const detail::KernelNode& node() const noexcept { return *node_; }
  [[nodiscard]] std::string describe() const;

 private:
  explicit ScalarKernel(std::shared_ptr<const detail::KernelNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::KernelNode> node_;
};

namespace form {

struct CircleExpCos {};
struct Gaussian {
  double sigma;
};
struct DotExp {
  double scale;
  double shift;
};
struct TorusProduct {};
struct GroupFourier {
  std::vector<Complex> coefficients;
};
struct Zero {};
struct Composed {
  ScalarKernel base;
  std::optional<SymmetryMap> left;
  std::optional<SymmetryMap> right;
};
struct Offset {
  ScalarKernel base;
  double constant;
};
struct Combination {
  std::vector<std::pair<Complex, ScalarKernel>> terms;
};

}  // namespace form

using KernelForm = std::variant<form::CircleExpCos, form::Gaussian, form::DotExp, form::TorusProduct,
                                form::GroupFourier, form::Zero, form::Composed, form::Offset, form::Combination>;

std::string_view form_name(const KernelForm& f) noexcept;

namespace detail {
struct KernelNode {
  Space space;
  KernelForm form;
};
}  // namespace detail

/// An l x l grid of scalar kernels, K(x, y)_{ij} = entry(i, j)(x, y).
/// Indices are zero-based.
class MatrixKernel {
 public:
  MatrixKernel(int ell, std::vector<ScalarKernel> entries_row_major);

  static MatrixKernel diagonal(const ScalarKernel& k, int ell);
  static MatrixKernel from_scalar(const ScalarKernel& k) { return diagonal(k, 1); }

  [[nodiscard]] int ell() const noexcept { return ell_; }
  [[nodiscard]] const Space& space() const noexcept { return entries_.front().space(); }
  [[nodiscard]] const ScalarKernel& entry(int i, int j) const;
  [[nodiscard]] const std::vector<ScalarKernel>& entries() const noexcept { return entries_; }

  [[nodiscard]] ComplexMatrix operator()(const Point& x, const Point& y) const;
  [[nodiscard]] ComplexMatrix eval(const Point& x, const Point& y) const { return (*this)(x, y); }

 private:
  int ell_;
  std::vector<ScalarKernel> entries_;
};

/// K_v(x, y) = <K(x, y) v, v> = sum_{ij} K_ij(x, y) v_j conj(v_i).
ScalarKernel project(const MatrixKernel& K, const ComplexVector& v);

/// Throws DuplicatePoints when two points coincide under points_equal.
void require_distinct(const Space& s, const std::vector<Point>& points);

/// n x n Gram [k(x_mu, x_nu)].
HermitianMatrix gram(const ScalarKernel& k, const std::vector<Point>& points,
                     double herm_tol = Tolerances{}.herm);

/// l*n x l*n blocked Gram: row (i, mu) at i*n + mu holds K_ij(x_mu, x_nu) in
/// column (j, nu). For l = 2 this is [[K11], [K12]; [K21], [K22]].
HermitianMatrix gram(const MatrixKernel& K, const std::vector<Point>& points,
                     double herm_tol = Tolerances{}.herm);

/// Coordinate-major flattening of per-point coefficient vectors, matching the
/// blocked Gram layout: entry i*n + mu holds coefficients[mu](i).
ComplexVector flatten_coefficients(const std::vector<ComplexVector>& coefficients);

using ProbePair = std::pair<Point, Point>;

std::vector<ProbePair> sample_probe_pairs(const Space& s, std::size_t count, std::uint64_t seed,
                                          const SamplingOptions& options = {});

/// Sampled evidence for an identity K(a(x), b(y)) = K(c(x), d(y)).
struct InvarianceReport {
  std::size_t map_count = 0;
  std::size_t probe_count = 0;
  double max_residual = 0.0;
  // Largest Frobenius norm of K over all evaluations.
  double scale = 0.0;
  double tol = 0.0;
  bool passed = true;

  [[nodiscard]] double relative_residual() const noexcept { return scale > 0.0 ? max_residual / scale : max_residual; }
};

/// max ||K(phi x, phi y) - K(x, y)|| over maps and probes; passes when it is
/// at most tol * scale.
InvarianceReport check_unitary_invariance(const MatrixKernel& K, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol = Tolerances{}.resid);
InvarianceReport check_unitary_invariance(const ScalarKernel& k, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol = Tolerances{}.resid);

/// max ||K(x, phi y) - K(phi* x, y)||. Throws MissingAdjoint if a map has no partner.
InvarianceReport check_adjoint_invariance(const MatrixKernel& K, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol = Tolerances{}.resid);
InvarianceReport check_adjoint_invariance(const ScalarKernel& k, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol = Tolerances{}.resid);

/// max |K_ij(x, y) - conj(K_ji(y, x))| relative to the largest |K_ij(x, y)|.
double hermitian_defect(const MatrixKernel& K, const std::vector<ProbePair>& probes);

}  // namespace pdproj
