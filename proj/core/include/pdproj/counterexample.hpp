#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pdproj/kernels.hpp"

namespace pdproj {

enum class CounterexampleVariant { Unitary, Adjoint, ShiftedAdjoint };

std::string_view to_string(CounterexampleVariant v) noexcept;

/// The 2 x 2 kernel
///
///   [ k(phi x, phi y)   k(phi x, y) ]
///   [ k(x, phi y)       k(x, y)     ]
///
/// built from a scalar kernel k and a map phi. The shifted variant adds
/// k(origin, origin) to both diagonal entries.
///
/// It is positive definite whenever k is, but never strictly so: the blocked
/// Gram at {x, phi(x)} repeats a row. With k strictly positive definite and
/// phi aperiodic, injective and central, every scalar projection is strictly
/// positive definite all the same.
struct CounterexampleKernel {
  ScalarKernel base;
  SymmetryMap map;
  CounterexampleVariant variant;
  std::optional<Point> origin;
  MatrixKernel as_matrix;
};

CounterexampleKernel build_unitary(const ScalarKernel& k, const SymmetryMap& phi);

/// Requires phi to carry its adjoint partner. Adjoint invariance of k is the
/// caller's to check (check_adjoint_invariance).
CounterexampleKernel build_adjoint(const ScalarKernel& k, const SymmetryMap& phi);

/// Throws OriginNotFixed unless phi(origin) == origin.
CounterexampleKernel build_shifted(const ScalarKernel& k, const SymmetryMap& phi, const Point& origin);

/// Grows an m x m kernel to ell x ell: the original block top-left, zero
/// kernels off it, and `filler` on the new diagonal entries.
MatrixKernel embed(const MatrixKernel& K, int ell, const ScalarKernel& filler);

/// Points plus per-point coefficient vectors that annihilate the blocked Gram.
struct DegeneracyWitness {
  std::vector<Point> points;
  std::vector<ComplexVector> coefficients;
  double achieved_form_value = 0.0;
  // ||G c|| for the flattened coefficients c.
  double residual_norm = 0.0;
  // Spectral scale of the blocked Gram at the witness points.
  double scale = 0.0;
  bool fixed_point_case = false;

  [[nodiscard]] ComplexVector flattened() const { return flatten_coefficients(coefficients); }
};

/// The analytic null direction:
///   phi(x) != x : points {x, phi(x)}, vectors (1, 0) and (0, -1);
///   phi(x) == x : point {x}, vector (1, -1);
///   shifted     : points {origin, x, phi(x)}, vectors (-1, 1), (1, 0), (0, -1).
/// Throws WitnessFailed if the form value exceeds resid_tol * scale.
DegeneracyWitness witness(const CounterexampleKernel& C, const Point& x, const Tolerances& tol = {});

}  // namespace pdproj
