#include <numbers>

#include "pdproj/kernels.hpp"
#include "pdproj/random.hpp"
#include "support.hpp"

using namespace pdproj;
using testing_support::random_vector;

namespace {

const double kE = std::exp(1.0);

std::vector<ScalarKernel> catalog() {
  const Space c = Space::circle();
  const Space r2 = Space::euclidean(2);
  const Space s2 = Space::complex_sphere(2);
  const Space g = Space::finite_abelian({3, 4});
  std::vector<Complex> coeffs(12);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = 0.1 + 0.05 * static_cast<double>(i);
  return {ScalarKernel::circle_exp_cos(c),
          ScalarKernel::gaussian(r2, 0.7),
          ScalarKernel::dot_exp(r2, 2.0, 1.0),
          ScalarKernel::dot_exp(s2),
          ScalarKernel::torus_product(c),
          ScalarKernel::torus_product(r2),
          ScalarKernel::group_fourier(g, coeffs),
          ScalarKernel::composed(ScalarKernel::gaussian(r2, 1.0), SymmetryMap::translation(r2, {1.0, 0.0}),
                                 SymmetryMap::translation(r2, {1.0, 0.0})),
          ScalarKernel::offset(ScalarKernel::dot_exp(r2), -1.0)};
}

}  // namespace

TEST(ScalarKernel, SpecValues) {
  EXPECT_NEAR(ScalarKernel::circle_exp_cos()(Point::angle(0.0), Point::angle(std::numbers::pi)).real(), std::exp(-1.0),
              1e-15);
  const Space r3 = Space::euclidean(3);
  const Point x = Point::euclidean({0.3, -1.0, 2.0});
  EXPECT_EQ(ScalarKernel::gaussian(r3, 1.0)(x, x), Complex(1.0, 0.0));
  const Point o = Point::euclidean({0.0, 0.0, 0.0});
  EXPECT_EQ(ScalarKernel::dot_exp(r3, 1.0, 1.0)(o, o), Complex(2.0, 0.0));
}

TEST(ScalarKernel, GaussianClosedForm) {
  const Space r1 = Space::euclidean(1);
  const auto k = ScalarKernel::gaussian(r1, 0.5);
  EXPECT_NEAR(k(Point::euclidean({0.0}), Point::euclidean({2.0})).real(), std::exp(-2.0), 1e-15);
}

TEST(ScalarKernel, TorusProductClosedForm) {
  const auto k = ScalarKernel::torus_product(Space::circle());
  const Complex want = 2.0 / (2.0 - std::exp(Complex(0.0, 0.5)));
  const Complex got = k(Point::angle(0.7), Point::angle(0.2));
  EXPECT_NEAR(std::abs(got - want), 0.0, 1e-14);
}

TEST(ScalarKernel, ComplexDotProductConjugatesSecondArgument) {
  const Space s1 = Space::complex_sphere(1);
  const auto k = ScalarKernel::dot_exp(s1);
  const Point x = Point::complex_sphere({Complex(0.0, 1.0)});
  const Point y = Point::complex_sphere({Complex(1.0, 0.0)});
  // <x, y> = i * conj(1) = i.
  EXPECT_NEAR(std::abs(k(x, y) - std::exp(Complex(0.0, 1.0))), 0.0, 1e-15);
}

TEST(ScalarKernel, ConstructionErrors) {
  EXPECT_PDPROJ_ERROR(ScalarKernel::gaussian(Space::circle(), 1.0), Errc::WrongSpaceKind);
  EXPECT_PDPROJ_ERROR(ScalarKernel::gaussian(Space::euclidean(2), 0.0), Errc::InvalidArgument);
  EXPECT_PDPROJ_ERROR(ScalarKernel::group_fourier(Space::finite_abelian({3}), {1.0}), Errc::WrongLength);
  EXPECT_PDPROJ_ERROR(ScalarKernel::combination({}), Errc::InvalidArgument);
  EXPECT_PDPROJ_ERROR(
      ScalarKernel::combination({{1.0, ScalarKernel::circle_exp_cos()}, {1.0, ScalarKernel::zero(Space::euclidean(1))}}),
      Errc::SpaceMismatch);
  EXPECT_PDPROJ_ERROR(ScalarKernel::circle_exp_cos()(Point::euclidean({0.0}), Point::angle(0.0)), Errc::SpaceMismatch);
}

TEST(MatrixKernel, Construction) {
  const auto k = ScalarKernel::circle_exp_cos();
  EXPECT_PDPROJ_ERROR(MatrixKernel(2, {k, k, k}), Errc::BadDimensions);
  EXPECT_PDPROJ_ERROR(MatrixKernel(2, {k, k, k, ScalarKernel::zero(Space::euclidean(1))}), Errc::SpaceMismatch);
  const auto d = MatrixKernel::diagonal(k, 3);
  EXPECT_PDPROJ_ERROR((void)d.entry(3, 0), Errc::BadDimensions);
  const auto m = d(Point::angle(0.0), Point::angle(0.0));
  EXPECT_NEAR(std::abs(m(1, 1) - kE), 0.0, 1e-15);
  EXPECT_EQ(m(0, 1), Complex(0.0, 0.0));
}

TEST(Project, SpecExamples) {
  const Space c = Space::circle();
  const auto k = ScalarKernel::circle_exp_cos(c);
  const auto phi = SymmetryMap::circle_rotation(1.0, c);
  const MatrixKernel K(2, {ScalarKernel::composed(k, phi, phi), ScalarKernel::composed(k, phi, std::nullopt),
                           ScalarKernel::composed(k, std::nullopt, phi), k});
  ComplexVector e1 = ComplexVector::Zero(2), e2 = ComplexVector::Zero(2);
  e1(0) = 1.0;
  e2(1) = 1.0;
  const auto pairs = sample_probe_pairs(c, 50, 1);
  const auto k1 = project(K, e1);
  const auto k2 = project(K, e2);
  const auto kd = project(MatrixKernel::diagonal(k, 2), ComplexVector::Ones(2));
  for (const auto& [x, y] : pairs) {
    EXPECT_NEAR(std::abs(k1(x, y) - K.entry(0, 0)(x, y)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(k2(x, y) - k(x, y)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(kd(x, y) - 2.0 * k(x, y)), 0.0, 1e-14);
  }
}

TEST(Project, Errors) {
  const auto K = MatrixKernel::diagonal(ScalarKernel::circle_exp_cos(), 2);
  EXPECT_PDPROJ_ERROR(project(K, ComplexVector::Ones(3)), Errc::DimensionMismatch);
  EXPECT_PDPROJ_ERROR(project(K, ComplexVector::Zero(2)), Errc::ZeroVector);
}

TEST(Gram, SpecExamples) {
  const Space r1 = Space::euclidean(1);
  const auto G = gram(ScalarKernel::gaussian(r1, 1.0), {Point::euclidean({0.0}), Point::euclidean({1.0})});
  EXPECT_DOUBLE_EQ(G(0, 0).real(), 1.0);
  EXPECT_NEAR(G(0, 1).real(), std::exp(-1.0), 1e-16);

  const Space r2 = Space::euclidean(2);
  const auto k = ScalarKernel::gaussian(r2, 1.0);
  const auto pts = sample_distinct(r2, 5, 0.1, 3);
  const auto g = gram(k, pts).matrix();
  const auto b = gram(MatrixKernel::diagonal(k, 2), pts).matrix();
  EXPECT_EQ(b.topLeftCorner(5, 5), g);
  EXPECT_EQ(b.bottomRightCorner(5, 5), g);
  EXPECT_EQ(b.topRightCorner(5, 5), ComplexMatrix::Zero(5, 5));
}

TEST(Gram, Errors) {
  const Space r1 = Space::euclidean(1);
  EXPECT_PDPROJ_ERROR(gram(ScalarKernel::gaussian(r1, 1.0), {}), Errc::InvalidArgument);
  EXPECT_PDPROJ_ERROR(gram(ScalarKernel::gaussian(r1, 1.0), {Point::euclidean({1.0}), Point::euclidean({1.0})}),
                      Errc::DuplicatePoints);
}

TEST(Invariance, UnitarySpecExamples) {
  const Space c = Space::circle();
  std::vector<SymmetryMap> rotations{SymmetryMap::circle_rotation(0.4), SymmetryMap::circle_rotation(2.9)};
  EXPECT_TRUE(check_unitary_invariance(ScalarKernel::circle_exp_cos(), rotations, sample_probe_pairs(c, 64, 1)).passed);

  const Space r2 = Space::euclidean(2);
  const auto pairs = sample_probe_pairs(r2, 64, 2);
  const auto g = ScalarKernel::gaussian(r2, 1.0);
  EXPECT_TRUE(check_unitary_invariance(g, {SymmetryMap::translation(r2, {0.3, -0.8})}, pairs, 1e-12).passed);
  const auto bad = check_unitary_invariance(g, {SymmetryMap::scaling(r2, 2.0)}, pairs);
  EXPECT_FALSE(bad.passed);
  EXPECT_EQ(bad.probe_count, 64u);
}

TEST(Invariance, AdjointSpecExamples) {
  const Space r2 = Space::euclidean(2);
  const auto pairs = sample_probe_pairs(r2, 64, 3);
  const auto dot = ScalarKernel::dot_exp(r2);
  EXPECT_TRUE(check_adjoint_invariance(dot, {SymmetryMap::scaling(r2, 3.0).self_adjoint()}, pairs).passed);

  const auto t = SymmetryMap::translation(r2, {0.5, 1.0});
  const auto ta = t.with_adjoint(SymmetryMap::translation(r2, {-0.5, -1.0}));
  EXPECT_TRUE(check_adjoint_invariance(ScalarKernel::gaussian(r2, 1.0), {ta}, pairs).passed);
  // <x, y + t> differs from <x + t, y> once x is not orthogonal to t.
  const std::vector<ProbePair> probe{{Point::euclidean({1.0, 0.0}), Point::euclidean({0.0, 0.0})}};
  EXPECT_FALSE(check_adjoint_invariance(dot, {t.self_adjoint()}, probe).passed);
  EXPECT_PDPROJ_ERROR(check_adjoint_invariance(dot, {t}, pairs), Errc::MissingAdjoint);
}

// Properties.

TEST(KernelProperty, CatalogIsHermitian) {
  for (const auto& k : catalog()) {
    const auto pairs = sample_probe_pairs(k.space(), 100, 17);
    for (const auto& [x, y] : pairs) {
      const Complex a = k(x, y);
      ASSERT_TRUE(std::isfinite(a.real()) && std::isfinite(a.imag())) << k.describe();
      EXPECT_LE(std::abs(a - std::conj(k(y, x))), 1e-12 * std::max(1.0, std::abs(a))) << k.describe();
    }
  }
}

TEST(KernelProperty, ProjectionGramIsContractedBlockedGram) {
  Rng rng(31);
  const Space r2 = Space::euclidean(2);
  const auto k = ScalarKernel::gaussian(r2, 1.0);
  const auto phi = SymmetryMap::translation(r2, {1.0, 0.0});
  const MatrixKernel K(2, {ScalarKernel::composed(k, phi, phi), ScalarKernel::composed(k, phi, std::nullopt),
                           ScalarKernel::composed(k, std::nullopt, phi), k});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const auto pts = sample_distinct(r2, n, 0.05, rng.next_u64());
    const ComplexVector v = random_vector(rng, 2);
    const auto B = gram(K, pts).matrix();
    const auto P = gram(project(K, v), pts).matrix();
    // P(mu, nu) = sum_ij conj(v_i) B(i n + mu, j n + nu) v_j.
    for (std::size_t mu = 0; mu < n; ++mu) {
      for (std::size_t nu = 0; nu < n; ++nu) {
        Complex want = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            want += std::conj(v(i)) * B(i * static_cast<Eigen::Index>(n) + mu, j * static_cast<Eigen::Index>(n) + nu) * v(j);
        EXPECT_LE(std::abs(P(mu, nu) - want), 1e-8 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST(KernelProperty, ProjectionIsSesquilinear) {
  Rng rng(32);
  const auto K = MatrixKernel(2, {ScalarKernel::circle_exp_cos(), ScalarKernel::zero(Space::circle()),
                                  ScalarKernel::zero(Space::circle()), ScalarKernel::torus_product(Space::circle())});
  const auto pairs = sample_probe_pairs(Space::circle(), 20, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexVector v = random_vector(rng, 2);
    const Complex alpha = rng.complex_normal();
    const auto a = project(K, v);
    const auto b = project(K, alpha * v);
    for (const auto& [x, y] : pairs) {
      EXPECT_LE(std::abs(b(x, y) - std::norm(alpha) * a(x, y)), 1e-12 * std::max(1.0, std::abs(b(x, y))));
    }
  }
}

TEST(KernelProperty, StrictCatalogKernelsGivePositiveDefiniteGrams) {
  Rng rng(33);
  std::vector<Complex> coeffs(12);
  for (auto& c : coeffs) c = rng.uniform(0.05, 1.0);
  const Space c = Space::circle();
  const Space r2 = Space::euclidean(2);
  const Space g = Space::finite_abelian({3, 4});
  struct Case {
    ScalarKernel k;
    std::size_t n_max;
    double min_sep;
  };
  // e^cos has rapidly decaying Fourier coefficients, so its Grams lose
  // definiteness to round-off beyond about eight well-separated points.
  const std::vector<Case> cases{{ScalarKernel::circle_exp_cos(c), 8, 0.25},
                                {ScalarKernel::torus_product(c), 10, 0.3},
                                {ScalarKernel::gaussian(r2, 1.0), 20, 0.2},
                                {ScalarKernel::group_fourier(g, coeffs), 12, 0.5}};
  for (const auto& cs : cases) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + rng.below(cs.n_max);
      SamplingOptions o;
      o.radius = 2.0;
      const auto pts = sample_distinct(cs.k.space(), n, cs.min_sep, rng.next_u64(), o);
      const auto v = classify(gram(cs.k, pts));
      EXPECT_EQ(v.kind, PDKind::PositiveDefinite) << cs.k.describe() << " n=" << n << " rel=" << v.relative_min_eigenvalue();
    }
  }
}
