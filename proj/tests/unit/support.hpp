#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "pdproj/error.hpp"
#include "pdproj/numcore.hpp"
#include "pdproj/random.hpp"

namespace testing_support {

using pdproj::Complex;
using pdproj::ComplexMatrix;
using pdproj::ComplexVector;

inline ComplexMatrix random_matrix(pdproj::Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexVector random_vector(pdproj::Rng& rng, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

// B B* has rank min(rows, cols) of B almost surely.
inline ComplexMatrix random_psd(pdproj::Rng& rng, int n, int rank) {
  const ComplexMatrix b = random_matrix(rng, n, rank);
  ComplexMatrix m = b * b.adjoint();
  return (m + m.adjoint()) / 2.0;
}

// Eigenvalues of a 2 x 2 Hermitian matrix from its characteristic
// polynomial t^2 - tr t + det.
inline std::pair<double, double> eig2_oracle(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b2 = std::norm(m(0, 1));
  const double tr = a + d;
  const double det = a * d - b2;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return {tr / 2.0 - disc, tr / 2.0 + disc};
}

}  // namespace testing_support

#define EXPECT_PDPROJ_ERROR(stmt, errc)                                         \
  do {                                                                          \
    try {                                                                       \
      (void)(stmt);                                                            \
      ADD_FAILURE() << "expected " << pdproj::to_string(errc) << " from " #stmt; \
    } catch (const pdproj::Error& e) {                                          \
      EXPECT_EQ(e.code(), errc) << e.what();                                    \
    }                                                                           \
  } while (0)
