#include "pdproj/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdproj/error.hpp"

namespace pdproj {

namespace {

void require_group(const Space& s) {
  if (s.kind() != SpaceKind::FiniteAbelian) throw Error(Errc::WrongSpaceKind, s.describe() + " is not a finite group");
}

}  // namespace

Complex character_value(const Space& group, const std::vector<int>& g, const std::vector<int>& x) {
  // Accumulate the phase as a fraction of a full turn so the identity maps to
  // exactly 1 and rounding stays at one ulp of 2 pi.
  double turns = 0.0;
  for (std::size_t r = 0; r < g.size(); ++r) {
    const long long q = group.moduli()[r];
    turns += static_cast<double>((static_cast<long long>(g[r]) * x[r]) % q) / static_cast<double>(q);
  }
  turns -= std::floor(turns);
  if (turns == 0.0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

Complex character(const Point& g, const Point& x, const Space& group) {
  require_group(group);
  require_member(group, g, "character");
  require_member(group, x, "character");
  return character_value(group, g.elems(), x.elems());
}

FourierSpectrum FourierSpectrum::scalar(const Space& group, std::vector<double> coefficients, double synth_tol) {
  require_group(group);
  if (static_cast<std::int64_t>(coefficients.size()) != group.order()) {
    throw Error(Errc::WrongLength, "spectrum needs " + std::to_string(group.order()) + " coefficients, got " +
                                       std::to_string(coefficients.size()));
  }
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (!std::isfinite(coefficients[i]) || coefficients[i] < -synth_tol) {
      throw Error(Errc::InvalidSpectrum, "coefficient " + std::to_string(i) + " = " + std::to_string(coefficients[i]) +
                                             " is negative");
    }
  }
  return FourierSpectrum(group, std::move(coefficients));
}

FourierSpectrum FourierSpectrum::matrix(const Space& group, std::vector<ComplexMatrix> coefficients, double synth_tol) {
  require_group(group);
  if (static_cast<std::int64_t>(coefficients.size()) != group.order()) {
    throw Error(Errc::WrongLength, "spectrum needs " + std::to_string(group.order()) + " coefficients, got " +
                                       std::to_string(coefficients.size()));
  }
  const Eigen::Index ell = coefficients.front().rows();
  if (ell < 1) throw Error(Errc::BadDimensions, "matrix coefficients must be at least 1 x 1");
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    auto& a = coefficients[i];
    if (a.rows() != ell || a.cols() != ell) throw Error(Errc::BadDimensions, "matrix coefficients differ in size");
    const HermitianMatrix h(a);
    const auto values = decompose(h).values;
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    if (values(0) < -synth_tol * scale) {
      throw Error(Errc::InvalidSpectrum, "coefficient " + std::to_string(i) + " is not positive semidefinite");
    }
    a = h.matrix();
  }
  return FourierSpectrum(group, std::move(coefficients));
}

int FourierSpectrum::ell() const noexcept {
  if (const auto* m = std::get_if<std::vector<ComplexMatrix>>(&coeffs_)) return static_cast<int>(m->front().rows());
  return 1;
}

std::size_t FourierSpectrum::size() const noexcept {
  return std::visit([](const auto& c) { return c.size(); }, coeffs_);
}

const std::vector<double>& FourierSpectrum::scalar_coefficients() const {
  if (const auto* s = std::get_if<std::vector<double>>(&coeffs_)) return *s;
  throw Error(Errc::WrongSpaceKind, "spectrum has matrix coefficients");
}

const std::vector<ComplexMatrix>& FourierSpectrum::matrix_coefficients() const {
  if (const auto* m = std::get_if<std::vector<ComplexMatrix>>(&coeffs_)) return *m;
  throw Error(Errc::WrongSpaceKind, "spectrum has scalar coefficients");
}

ComplexMatrix FourierSpectrum::coefficient(std::size_t index) const {
  if (index >= size()) throw Error(Errc::InvalidArgument, "coefficient index out of range");
  if (is_matrix()) return matrix_coefficients()[index];
  return ComplexMatrix::Constant(1, 1, Complex(scalar_coefficients()[index], 0.0));
}

FourierSpectrum SpectrumAnalysis::spectrum(double synth_tol) const {
  if (!positive_definite) {
    throw Error(Errc::InvalidSpectrum, "coefficients are not all real and nonnegative (min real " +
                                           std::to_string(min_real) + ", max imag " + std::to_string(max_imag) + ")");
  }
  std::vector<double> a;
  a.reserve(coefficients.size());
  for (const auto& c : coefficients) a.push_back(std::max(0.0, c.real()));
  return FourierSpectrum::scalar(group, std::move(a), synth_tol);
}

SpectrumAnalysis analyze(const std::vector<Complex>& psi, const Space& group, double synth_tol) {
  require_group(group);
  if (static_cast<std::int64_t>(psi.size()) != group.order()) {
    throw Error(Errc::WrongLength, "analyze needs " + std::to_string(group.order()) + " values, got " +
                                       std::to_string(psi.size()));
  }
  const auto elems = group_elements(group);
  const double inv = 1.0 / static_cast<double>(elems.size());
  SpectrumAnalysis out{group, {}, 0.0, 0.0, false};
  out.coefficients.reserve(elems.size());
  for (const auto& g : elems) {
    Complex acc{};
    for (std::size_t x = 0; x < elems.size(); ++x) {
      acc += psi[x] * std::conj(character_value(group, g.elems(), elems[x].elems()));
    }
    out.coefficients.push_back(acc * inv);
  }
  out.min_real = out.coefficients.front().real();
  for (const auto& c : out.coefficients) {
    out.max_imag = std::max(out.max_imag, std::abs(c.imag()));
    out.min_real = std::min(out.min_real, c.real());
  }
  out.positive_definite = out.min_real >= -synth_tol && out.max_imag <= synth_tol;
  return out;
}

std::vector<ComplexMatrix> synthesize_matrix(const FourierSpectrum& spectrum) {
  const Space& group = spectrum.group();
  const auto elems = group_elements(group);
  const int ell = spectrum.ell();
  std::vector<ComplexMatrix> out(elems.size(), ComplexMatrix::Zero(ell, ell));
  for (std::size_t x = 0; x < elems.size(); ++x) {
    for (std::size_t g = 0; g < elems.size(); ++g) {
      out[x] += spectrum.coefficient(g) * character_value(group, elems[g].elems(), elems[x].elems());
    }
  }
  return out;
}

std::vector<Complex> synthesize(const FourierSpectrum& spectrum) {
  if (spectrum.is_matrix()) throw Error(Errc::WrongSpaceKind, "synthesize() expects a scalar spectrum");
  const Space& group = spectrum.group();
  const auto elems = group_elements(group);
  const auto& a = spectrum.scalar_coefficients();
  std::vector<Complex> out(elems.size());
  for (std::size_t x = 0; x < elems.size(); ++x) {
    Complex acc{};
    for (std::size_t g = 0; g < elems.size(); ++g) acc += a[g] * character_value(group, elems[g].elems(), elems[x].elems());
    out[x] = acc;
  }
  return out;
}

MatrixKernel spectrum_kernel(const FourierSpectrum& spectrum) {
  const int ell = spectrum.ell();
  std::vector<ScalarKernel> entries;
  entries.reserve(static_cast<std::size_t>(ell * ell));
  for (int i = 0; i < ell; ++i) {
    for (int j = 0; j < ell; ++j) {
      std::vector<Complex> c(spectrum.size());
      for (std::size_t g = 0; g < c.size(); ++g) c[g] = spectrum.coefficient(g)(i, j);
      entries.push_back(ScalarKernel::group_fourier(spectrum.group(), std::move(c)));
    }
  }
  return MatrixKernel(ell, std::move(entries));
}

ScalarKernel spectrum_scalar_kernel(const FourierSpectrum& spectrum) {
  if (spectrum.is_matrix()) throw Error(Errc::WrongSpaceKind, "spectrum_scalar_kernel expects a scalar spectrum");
  std::vector<Complex> c(spectrum.scalar_coefficients().begin(), spectrum.scalar_coefficients().end());
  return ScalarKernel::group_fourier(spectrum.group(), std::move(c));
}

bool strict_criterion(const FourierSpectrum& spectrum, const Tolerances& tol) {
  if (!spectrum.is_matrix()) {
    const auto& a = spectrum.scalar_coefficients();
    return std::all_of(a.begin(), a.end(), [&](double v) { return v > tol.strict; });
  }
  const auto& a = spectrum.matrix_coefficients();
  return std::all_of(a.begin(), a.end(), [&](const ComplexMatrix& m) {
    return classify(HermitianMatrix(m, tol.herm), tol.pd).kind == PDKind::PositiveDefinite;
  });
}

PDVerdict brute_force_strict(const MatrixKernel& K, double pd_tol, std::size_t cap) {
  require_group(K.space());
  const auto rows = static_cast<std::size_t>(K.space().order()) * static_cast<std::size_t>(K.ell());
  if (rows > cap) {
    throw Error(Errc::TooLarge, "blocked Gram would have " + std::to_string(rows) + " rows (cap " +
                                    std::to_string(cap) + ")");
  }
  return classify(gram(K, group_elements(K.space())), pd_tol);
}

PDVerdict brute_force_strict(const ScalarKernel& k, double pd_tol, std::size_t cap) {
  return brute_force_strict(MatrixKernel::from_scalar(k), pd_tol, cap);
}

}  // namespace pdproj
