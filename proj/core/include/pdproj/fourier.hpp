#pragma once

#include <variant>
#include <vector>

#include "pdproj/kernels.hpp"

namespace pdproj {

// Harmonic analysis on G = Z_q1 x ... x Z_ql, written additively: the
// translation-invariant kernel attached to psi is K(x, y) = psi(x - y) with
// componentwise subtraction mod q_r.

/// xi_g(x) = prod_r exp(2 pi i g_r x_r / q_r).
Complex character(const Point& g, const Point& x, const Space& group);
/// Same, on raw coordinate tuples (no membership checks).
Complex character_value(const Space& group, const std::vector<int>& g, const std::vector<int>& x);

/// Coefficients {a_g} (scalar) or {A_g} (l x l Hermitian PSD), indexed in
/// the lexicographic order of group_elements().
class FourierSpectrum {
 public:
  static FourierSpectrum scalar(const Space& group, std::vector<double> coefficients,
                                double synth_tol = Tolerances{}.synth);
  static FourierSpectrum matrix(const Space& group, std::vector<ComplexMatrix> coefficients,
                                double synth_tol = Tolerances{}.synth);

  [[nodiscard]] const Space& group() const noexcept { return group_; }
  [[nodiscard]] bool is_matrix() const noexcept { return std::holds_alternative<std::vector<ComplexMatrix>>(coeffs_); }
  [[nodiscard]] int ell() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept;
  [[nodiscard]] const std::vector<double>& scalar_coefficients() const;
  [[nodiscard]] const std::vector<ComplexMatrix>& matrix_coefficients() const;
  /// Coefficient at lexicographic index as an ell x ell matrix (1 x 1 for scalars).
  [[nodiscard]] ComplexMatrix coefficient(std::size_t index) const;

 private:
  FourierSpectrum(Space g, std::variant<std::vector<double>, std::vector<ComplexMatrix>> c)
      : group_(std::move(g)), coeffs_(std::move(c)) {}

  Space group_;
  std::variant<std::vector<double>, std::vector<ComplexMatrix>> coeffs_;
};

/// Raw Fourier coefficients of a function on G and the evidence drawn from
/// them: psi is positive definite iff every coefficient is real and >= 0.
struct SpectrumAnalysis {
  Space group;
  std::vector<Complex> coefficients;
  double max_imag = 0.0;
  double min_real = 0.0;
  bool positive_definite = false;

  /// Throws InvalidSpectrum when the coefficients are not a valid spectrum.
  [[nodiscard]] FourierSpectrum spectrum(double synth_tol = Tolerances{}.synth) const;
};

/// a_g = (1/|G|) sum_x psi(x) conj(xi_g(x)) by direct summation. `psi` holds
/// |G| values in group_elements() order.
SpectrumAnalysis analyze(const std::vector<Complex>& psi, const Space& group, double synth_tol = Tolerances{}.synth);

/// psi(x) = sum_g a_g xi_g(x). Throws WrongSpaceKind for matrix spectra.
std::vector<Complex> synthesize(const FourierSpectrum& spectrum);
/// psi(x) = sum_g A_g xi_g(x); scalar spectra give 1 x 1 matrices.
std::vector<ComplexMatrix> synthesize_matrix(const FourierSpectrum& spectrum);

/// The kernel sum_g A_g xi_g(x) conj(xi_g(y)) as an l x l grid of
/// group_fourier entries.
MatrixKernel spectrum_kernel(const FourierSpectrum& spectrum);
ScalarKernel spectrum_scalar_kernel(const FourierSpectrum& spectrum);

/// Strictness from the coefficients alone: every a_g > strict_tol, or every
/// A_g classified PositiveDefinite.
bool strict_criterion(const FourierSpectrum& spectrum, const Tolerances& tol = {});

inline constexpr std::size_t kBruteForceCap = 200;

/// Classify the full l|G| x l|G| blocked Gram over every group element.
/// Throws TooLarge above `cap` rows.
PDVerdict brute_force_strict(const MatrixKernel& K, double pd_tol = Tolerances{}.pd, std::size_t cap = kBruteForceCap);
PDVerdict brute_force_strict(const ScalarKernel& k, double pd_tol = Tolerances{}.pd, std::size_t cap = kBruteForceCap);

}  // namespace pdproj
