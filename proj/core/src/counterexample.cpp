#include "pdproj/counterexample.hpp"

#include <cmath>
#include <sstream>

#include "pdproj/error.hpp"

namespace pdproj {

std::string_view to_string(CounterexampleVariant v) noexcept {
  switch (v) {
    case CounterexampleVariant::Unitary: return "unitary";
    case CounterexampleVariant::Adjoint: return "adjoint";
    case CounterexampleVariant::ShiftedAdjoint: return "shifted_adjoint";
  }
  return "unknown";
}

namespace {

std::vector<ScalarKernel> grid_entries(const ScalarKernel& k, const SymmetryMap& phi) {
  return {
      ScalarKernel::composed(k, phi, phi),
      ScalarKernel::composed(k, phi, std::nullopt),
      ScalarKernel::composed(k, std::nullopt, phi),
      k,
  };
}

void require_same_space(const ScalarKernel& k, const SymmetryMap& phi) {
  if (!(k.space() == phi.space())) {
    throw Error(Errc::SpaceMismatch, "kernel on " + k.space().describe() + ", map on " + phi.space().describe());
  }
}

}  // namespace

CounterexampleKernel build_unitary(const ScalarKernel& k, const SymmetryMap& phi) {
  require_same_space(k, phi);
  return {k, phi, CounterexampleVariant::Unitary, std::nullopt, MatrixKernel(2, grid_entries(k, phi))};
}

CounterexampleKernel build_adjoint(const ScalarKernel& k, const SymmetryMap& phi) {
  require_same_space(k, phi);
  if (!phi.has_adjoint()) throw Error(Errc::MissingAdjoint, phi.describe() + " carries no adjoint partner");
  return {k, phi, CounterexampleVariant::Adjoint, std::nullopt, MatrixKernel(2, grid_entries(k, phi))};
}

CounterexampleKernel build_shifted(const ScalarKernel& k, const SymmetryMap& phi, const Point& origin) {
  require_same_space(k, phi);
  require_member(k.space(), origin, "build_shifted origin");
  if (!points_equal(phi.space(), phi.apply(origin), origin)) {
    throw Error(Errc::OriginNotFixed, "phi moves the origin " + origin.describe());
  }
  const double c = k(origin, origin).real();
  auto entries = grid_entries(k, phi);
  entries[0] = ScalarKernel::offset(entries[0], c);
  entries[3] = ScalarKernel::offset(entries[3], c);
  return {k, phi, CounterexampleVariant::ShiftedAdjoint, origin, MatrixKernel(2, std::move(entries))};
}

MatrixKernel embed(const MatrixKernel& K, int ell, const ScalarKernel& filler) {
  const int m = K.ell();
  if (m < 2 || ell < m) {
    throw Error(Errc::BadDimensions, "embedding needs 2 <= m <= ell (m = " + std::to_string(m) + ", ell = " +
                                         std::to_string(ell) + ")");
  }
  if (!(filler.space() == K.space())) throw Error(Errc::SpaceMismatch, "filler lives on a different space");
  if (m == ell) return K;
  const auto zero = ScalarKernel::zero(K.space());
  std::vector<ScalarKernel> entries;
  entries.reserve(static_cast<std::size_t>(ell * ell));
  for (int i = 0; i < ell; ++i) {
    for (int j = 0; j < ell; ++j) {
      if (i < m && j < m) {
        entries.push_back(K.entry(i, j));
      } else if (i == j) {
        entries.push_back(filler);
      } else {
        entries.push_back(zero);
      }
    }
  }
  return MatrixKernel(ell, std::move(entries));
}

DegeneracyWitness witness(const CounterexampleKernel& C, const Point& x, const Tolerances& tol) {
  const Space& s = C.as_matrix.space();
  require_member(s, x, "witness");
  DegeneracyWitness w;
  const auto vec2 = [](double a, double b) {
    ComplexVector v(2);
    v << a, b;
    return v;
  };

  if (C.variant == CounterexampleVariant::ShiftedAdjoint) {
    const Point& o = *C.origin;
    if (points_equal(s, x, o)) throw Error(Errc::InvalidArgument, "shifted witness needs x != origin");
    const Point fx = C.map.apply(x);
    if (points_equal(s, fx, x) || points_equal(s, fx, o)) {
      throw Error(Errc::InvalidArgument, "shifted witness needs origin, x, phi(x) distinct");
    }
    w.points = {o, x, fx};
    w.coefficients = {vec2(-1, 1), vec2(1, 0), vec2(0, -1)};
  } else {
    const Point fx = C.map.apply(x);
    if (points_equal(s, fx, x)) {
      w.fixed_point_case = true;
      w.points = {x};
      w.coefficients = {vec2(1, -1)};
    } else {
      w.points = {x, fx};
      w.coefficients = {vec2(1, 0), vec2(0, -1)};
    }
  }

  const HermitianMatrix g = gram(C.as_matrix, w.points, tol.herm);
  const ComplexVector c = w.flattened();
  w.achieved_form_value = quadratic_form(g, c);
  w.residual_norm = (g.matrix() * c).norm();
  w.scale = decompose(g).values.cwiseAbs().maxCoeff();
  if (std::abs(w.achieved_form_value) > tol.resid * w.scale) {
    std::ostringstream os;
    os << "form value " << w.achieved_form_value << " exceeds " << tol.resid << " * " << w.scale;
    throw Error(Errc::WitnessFailed, os.str());
  }
  return w;
}

}  // namespace pdproj
