#include "pdproj/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdproj/error.hpp"

namespace pdproj {

std::string_view to_string(PDKind kind) noexcept {
  switch (kind) {
    case PDKind::PositiveDefinite: return "PositiveDefinite";
    case PDKind::PositiveSemidefiniteDegenerate: return "PositiveSemidefiniteDegenerate";
    case PDKind::Indefinite: return "Indefinite";
  }
  return "Unknown";
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double herm_tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw Error(Errc::DimensionMismatch, "Hermitian matrix must be square with dim >= 1");
  }
  if (!m_.allFinite()) {
    throw Error(Errc::NonHermitianInput, "matrix has non-finite entries");
  }
  const double scale = m_.cwiseAbs().maxCoeff();
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > herm_tol * std::max(scale, 1e-300)) {
    std::ostringstream os;
    os << "max |M - M*| = " << asym << " exceeds " << herm_tol << " * " << scale;
    throw Error(Errc::NonHermitianInput, os.str());
  }
  ComplexMatrix sym = (m_ + m_.adjoint()) * 0.5;
  m_ = std::move(sym);
}

EigenDecomposition decompose(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::SolverError, "Hermitian eigen-decomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PDVerdict classify(const HermitianMatrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "classify tolerance must be positive");
  auto [values, vectors] = decompose(m);

  PDVerdict v;
  v.scale = values.cwiseAbs().maxCoeff();
  v.min_eigenvalue = values(0);
  const double threshold = tol * v.scale;
  v.numeric_rank = (values.array().abs() > threshold).count();

  if (v.scale == 0.0) {
    // Zero matrix: every direction is null.
    v.kind = PDKind::PositiveSemidefiniteDegenerate;
    for (Eigen::Index i = 0; i < values.size(); ++i) v.null_vectors.emplace_back(vectors.col(i));
  } else if (v.min_eigenvalue > threshold) {
    v.kind = PDKind::PositiveDefinite;
  } else if (v.min_eigenvalue < -threshold) {
    v.kind = PDKind::Indefinite;
  } else {
    v.kind = PDKind::PositiveSemidefiniteDegenerate;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (std::abs(values(i)) <= threshold) v.null_vectors.emplace_back(vectors.col(i));
    }
  }
  v.eigenvalues = std::move(values);
  return v;
}

Eigen::Index numeric_rank(const HermitianMatrix& m, double tol) {
  const auto values = decompose(m).values;
  const double threshold = tol * values.cwiseAbs().maxCoeff();
  return (values.array().abs() > threshold).count();
}

Complex quadratic_form_complex(const HermitianMatrix& m, const ComplexVector& c) {
  if (c.size() != m.dim()) {
    throw Error(Errc::DimensionMismatch, "coefficient vector length " + std::to_string(c.size()) +
                                             " does not match matrix dim " + std::to_string(m.dim()));
  }
  return c.dot(m.matrix() * c);  // dot() conjugates its left argument
}

double quadratic_form(const HermitianMatrix& m, const ComplexVector& c) {
  return quadratic_form_complex(m, c).real();
}

double angle_to_span(const ComplexVector& v, const std::vector<ComplexVector>& basis) {
  const double vn = v.norm();
  if (vn == 0.0) throw Error(Errc::ZeroVector, "angle of a zero vector is undefined");
  if (basis.empty()) return std::acos(0.0);
  ComplexMatrix b(v.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != v.size()) throw Error(Errc::DimensionMismatch, "basis vector length");
    b.col(static_cast<Eigen::Index>(i)) = basis[i];
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(b);
  const ComplexMatrix q =
      qr.householderQ() * ComplexMatrix::Identity(v.size(), static_cast<Eigen::Index>(basis.size()));
  const double cosine = std::min(1.0, (q.adjoint() * v).norm() / vn);
  // asin of the residual is better conditioned than acos near zero.
  const double residual = (v - q * (q.adjoint() * v)).norm() / vn;
  return cosine > 0.7 ? std::asin(std::min(1.0, residual)) : std::acos(cosine);
}

}  // namespace pdproj
