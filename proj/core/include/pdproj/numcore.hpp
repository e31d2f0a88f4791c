#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pdproj {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds. pd, herm and resid are relative: they are multiplied
/// by the spectral scale of the matrix at hand. strict and synth are absolute
/// thresholds on Fourier coefficients.
struct Tolerances {
  double pd = 1e-9;
  double herm = 1e-12;
  double resid = 1e-8;
  double strict = 1e-10;
  double synth = 1e-10;
};

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction checks symmetry against herm_tol times the largest entry
/// modulus and then replaces the input by (M + M*)/2, so downstream
/// decompositions see an exactly Hermitian matrix.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m, double herm_tol = Tolerances{}.herm);

  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

enum class PDKind { PositiveDefinite, PositiveSemidefiniteDegenerate, Indefinite };

std::string_view to_string(PDKind kind) noexcept;

struct PDVerdict {
  PDKind kind = PDKind::PositiveDefinite;
  double min_eigenvalue = 0.0;
  Eigen::Index numeric_rank = 0;
  std::vector<ComplexVector> null_vectors;
  // Largest absolute eigenvalue; every threshold is relative to it.
  double scale = 0.0;
  RealVector eigenvalues;  // ascending

  [[nodiscard]] double relative_min_eigenvalue() const noexcept {
    return scale > 0.0 ? min_eigenvalue / scale : 0.0;
  }
};

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors;  // columns, orthonormal
};

EigenDecomposition decompose(const HermitianMatrix& m);

/// Full eigen-decomposition followed by a PD / degenerate / indefinite call.
PDVerdict classify(const HermitianMatrix& m, double tol = Tolerances{}.pd);

/// Number of eigenvalues with |lambda| > tol * scale.
Eigen::Index numeric_rank(const HermitianMatrix& m, double tol = Tolerances{}.pd);

/// Re(c* M c). Throws DimensionMismatch when c has the wrong length.
double quadratic_form(const HermitianMatrix& m, const ComplexVector& c);

/// c* M c without discarding the imaginary part (diagnostic).
Complex quadratic_form_complex(const HermitianMatrix& m, const ComplexVector& c);

/// Angle between `v` and the span of `basis` (orthonormal columns or not).
/// Zero when v lies in the span; pi/2 when orthogonal to it.
double angle_to_span(const ComplexVector& v, const std::vector<ComplexVector>& basis);

}  // namespace pdproj
