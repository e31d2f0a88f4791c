#include <numbers>

#include "pdproj/fourier.hpp"
#include "support.hpp"

using namespace pdproj;
using testing_support::random_psd;
using testing_support::random_vector;

namespace {

const Complex kI(0.0, 1.0);

Space random_group(Rng& rng, std::size_t max_order) {
  for (;;) {
    std::vector<int> q;
    const std::size_t rank = 1 + rng.below(3);
    std::size_t order = 1;
    for (std::size_t r = 0; r < rank; ++r) {
      q.push_back(static_cast<int>(2 + rng.below(5)));
      order *= static_cast<std::size_t>(q.back());
    }
    if (order <= max_order) return Space::finite_abelian(q);
  }
}

// A_g = B B* + 0.05 I, with an occasional rank-deficient coefficient.
FourierSpectrum random_spectrum(Rng& rng, const Space& g, int ell, bool degenerate) {
  const std::size_t n = g.order();
  const std::size_t bad = degenerate ? rng.below(n) : n;
  if (ell == 1) {
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = i == bad ? 0.0 : rng.uniform(0.05, 1.0);
    return FourierSpectrum::scalar(g, a);
  }
  std::vector<ComplexMatrix> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = i == bad ? random_psd(rng, ell, ell - 1)
                    : ComplexMatrix(random_psd(rng, ell, ell) + 0.05 * ComplexMatrix::Identity(ell, ell));
  }
  return FourierSpectrum::matrix(g, a);
}

Point elem(const Space& g, std::vector<int> e) { return Point::group(std::move(e), g); }

}  // namespace

TEST(Fourier, CharacterValues) {
  const Space z2 = Space::finite_abelian({2});
  const Space z4 = Space::finite_abelian({4});
  EXPECT_NEAR(std::abs(character(elem(z2, {1}), elem(z2, {1}), z2) - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(character(elem(z4, {1}), elem(z4, {1}), z4) - kI), 0.0, 1e-15);
  const Space g = Space::finite_abelian({3, 5});
  for (const auto& x : group_elements(g)) EXPECT_EQ(character(elem(g, {0, 0}), x, g), Complex(1.0));
  EXPECT_PDPROJ_ERROR(character(Point::angle(0.0), Point::angle(0.0), Space::circle()), Errc::WrongSpaceKind);
}

TEST(Fourier, AnalyzeExamples) {
  const Space z2 = Space::finite_abelian({2});
  const auto a = analyze({1.0, 0.0}, z2);
  EXPECT_NEAR(std::abs(a.coefficients[0] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.coefficients[1] - 0.5), 0.0, 1e-15);
  EXPECT_TRUE(a.positive_definite);

  const Space g = Space::finite_abelian({3, 4});
  const auto elems = group_elements(g);
  const std::size_t target = 7;
  std::vector<Complex> chi, constant(elems.size(), 2.5);
  for (const auto& x : elems) chi.push_back(character(elems[target], x, g));
  const auto ac = analyze(chi, g);
  const auto ak = analyze(constant, g);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    EXPECT_NEAR(std::abs(ac.coefficients[i] - (i == target ? 1.0 : 0.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ak.coefficients[i] - (i == 0 ? 2.5 : 0.0)), 0.0, 1e-14);
  }

  // psi(1) = -1 on Z2 has a negative coefficient.
  const auto bad = analyze({0.0, 1.0}, z2);
  EXPECT_FALSE(bad.positive_definite);
  EXPECT_PDPROJ_ERROR(bad.spectrum(), Errc::InvalidSpectrum);
  EXPECT_PDPROJ_ERROR(analyze({1.0}, z2), Errc::WrongLength);
}

TEST(Fourier, SynthesizeExamples) {
  const Space z4 = Space::finite_abelian({4});
  const auto psi = synthesize(FourierSpectrum::scalar(z4, {0.0, 1.0, 0.0, 0.0}));
  const Complex want[] = {1.0, kI, -1.0, -kI};
  for (int x = 0; x < 4; ++x) EXPECT_NEAR(std::abs(psi[x] - want[x]), 0.0, 1e-15);

  const auto k = spectrum_scalar_kernel(FourierSpectrum::scalar(z4, {1.0, 0.0, 0.0, 0.0}));
  EXPECT_NEAR(std::abs(k(elem(z4, {1}), elem(z4, {3})) - 1.0), 0.0, 1e-15);
}

TEST(Fourier, SpectrumValidation) {
  const Space z2 = Space::finite_abelian({2});
  EXPECT_PDPROJ_ERROR(FourierSpectrum::scalar(z2, {1.0, -0.5}), Errc::InvalidSpectrum);
  EXPECT_PDPROJ_ERROR(FourierSpectrum::scalar(z2, {1.0}), Errc::WrongLength);
  ComplexMatrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  EXPECT_PDPROJ_ERROR(FourierSpectrum::matrix(z2, {indefinite, indefinite}), Errc::InvalidSpectrum);
  const auto s = FourierSpectrum::matrix(z2, {ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)});
  EXPECT_PDPROJ_ERROR(synthesize(s), Errc::WrongSpaceKind);
  EXPECT_PDPROJ_ERROR((void)s.scalar_coefficients(), Errc::WrongSpaceKind);
}

TEST(Fourier, StrictnessExamples) {
  const Space z3 = Space::finite_abelian({3});
  const auto strict = FourierSpectrum::scalar(z3, {1.0, 0.5, 0.25});
  const auto loose = FourierSpectrum::scalar(z3, {1.0, 0.0, 0.25});
  EXPECT_TRUE(strict_criterion(strict));
  EXPECT_FALSE(strict_criterion(loose));
  EXPECT_EQ(brute_force_strict(spectrum_kernel(strict)).kind, PDKind::PositiveDefinite);
  EXPECT_EQ(brute_force_strict(spectrum_kernel(loose)).kind, PDKind::PositiveSemidefiniteDegenerate);

  ComplexMatrix rank1(2, 2);
  rank1 << 1.0, 1.0, 1.0, 1.0;
  const auto m = FourierSpectrum::matrix(z3, {ComplexMatrix::Identity(2, 2), rank1, ComplexMatrix::Identity(2, 2)});
  EXPECT_FALSE(strict_criterion(m));
  EXPECT_EQ(brute_force_strict(spectrum_kernel(m)).kind, PDKind::PositiveSemidefiniteDegenerate);

  const Space big = Space::finite_abelian({15, 14});
  EXPECT_PDPROJ_ERROR(brute_force_strict(ScalarKernel::zero(big)), Errc::TooLarge);
  EXPECT_PDPROJ_ERROR(brute_force_strict(ScalarKernel::circle_exp_cos()), Errc::WrongSpaceKind);
}

// Properties.

TEST(FourierProperty, CharactersAreOrthonormal) {
  Rng rng(201);
  for (int trial = 0; trial < 10; ++trial) {
    const Space g = random_group(rng, 24);
    const auto elems = group_elements(g);
    const double n = static_cast<double>(elems.size());
    for (const auto& a : elems) {
      for (const auto& b : elems) {
        Complex ip = 0.0;
        for (const auto& x : elems) ip += character(a, x, g) * std::conj(character(b, x, g));
        EXPECT_NEAR(std::abs(ip / n - (a == b ? 1.0 : 0.0)), 0.0, 1e-12);
      }
    }
  }
}

TEST(FourierProperty, ParsevalAndRoundtrip) {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const Space g = random_group(rng, 24);
    const auto s = random_spectrum(rng, g, 1, rng.below(2) == 0);
    const auto psi = synthesize(s);
    const auto back = analyze(psi, g);
    double energy = 0.0, coeff = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      energy += std::norm(psi[i]);
      coeff += std::norm(back.coefficients[i]);
      EXPECT_LE(std::abs(back.coefficients[i] - s.scalar_coefficients()[i]), 1e-10);
    }
    EXPECT_NEAR(energy / static_cast<double>(psi.size()), coeff, 1e-10 * std::max(1.0, coeff));
  }
}

TEST(FourierProperty, KernelIsTranslationInvariantSynthesis) {
  Rng rng(203);
  for (int trial = 0; trial < 30; ++trial) {
    const Space g = random_group(rng, 24);
    const auto s = random_spectrum(rng, g, 1, false);
    const auto psi = synthesize(s);
    const auto k = spectrum_scalar_kernel(s);
    const auto elems = group_elements(g);
    for (int probe = 0; probe < 20; ++probe) {
      const auto& x = elems[rng.below(elems.size())];
      const auto& y = elems[rng.below(elems.size())];
      EXPECT_LE(std::abs(k(x, y) - psi[group_index(g, group_difference(g, x, y))]), 1e-12);
    }
  }
}

// Projecting the matrix kernel onto v gives the scalar kernel with
// coefficients <A_g v, v>.
TEST(FourierProperty, ProjectionMatchesProjectedSpectrum) {
  Rng rng(204);
  for (int trial = 0; trial < 30; ++trial) {
    const Space g = random_group(rng, 24);
    const int ell = 2 + static_cast<int>(rng.below(2));
    const auto s = random_spectrum(rng, g, ell, rng.below(2) == 0);
    const ComplexVector v = random_vector(rng, ell);
    std::vector<double> a;
    for (const auto& A : s.matrix_coefficients()) a.push_back(v.dot(A * v).real());
    const auto want = spectrum_scalar_kernel(FourierSpectrum::scalar(g, a));
    const auto got = project(spectrum_kernel(s), v);
    for (const auto& [x, y] : sample_probe_pairs(g, 20, rng.next_u64())) {
      EXPECT_LE(std::abs(got(x, y) - want(x, y)), 1e-12 * std::max(1.0, std::abs(want(x, y))));
    }
  }
}

TEST(FourierProperty, CriterionAgreesWithBruteForce) {
  Rng rng(205);
  int strict = 0, degenerate = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Space g = random_group(rng, 24);
    const int ell = 1 + trial % 3;
    const auto s = random_spectrum(rng, g, ell, rng.below(2) == 0);
    const bool c = strict_criterion(s);
    const auto v = brute_force_strict(spectrum_kernel(s));
    EXPECT_EQ(c, v.kind == PDKind::PositiveDefinite) << g.describe() << " ell=" << ell;
    EXPECT_NE(v.kind, PDKind::Indefinite);
    (c ? strict : degenerate)++;
  }
  EXPECT_GT(strict, 10);
  EXPECT_GT(degenerate, 10);
}
