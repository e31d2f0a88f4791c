#include "pdproj/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdproj/error.hpp"
#include "pdproj/fourier.hpp"
#include "pdproj/random.hpp"

namespace pdproj {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Complex inner(const Point& x, const Point& y) {
  if (x.kind() == SpaceKind::Euclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.coords().size(); ++i) s += x.coords()[i] * y.coords()[i];
    return s;
  }
  Complex s{};
  for (std::size_t i = 0; i < x.complex_coords().size(); ++i) s += x.complex_coords()[i] * std::conj(y.complex_coords()[i]);
  return s;
}

double angle_coord(const Point& p, std::size_t i) {
  return p.kind() == SpaceKind::Circle ? p.angle() : p.coords()[i];
}

// sum_g c_g xi_g(x) conj(xi_g(y)) = sum_g c_g xi_g(x - y).
Complex eval_group_fourier(const Space& s, const std::vector<Complex>& c, const Point& x, const Point& y) {
  const auto& q = s.moduli();
  std::vector<int> g(q.size(), 0);
  Complex acc{};
  for (const auto& coeff : c) {
    if (coeff != Complex{}) acc += coeff * character_value(s, g, x.elems()) * std::conj(character_value(s, g, y.elems()));
    for (std::size_t r = q.size(); r-- > 0;) {
      if (++g[r] < q[r]) break;
      g[r] = 0;
    }
  }
  return acc;
}

Complex evaluate(const detail::KernelNode& n, const Point& x, const Point& y) {
  return std::visit(
      overloaded{
          [&](const form::CircleExpCos&) { return Complex(std::exp(std::cos(x.angle() - y.angle()))); },
          [&](const form::Gaussian& g) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.coords().size(); ++i) {
              const double d = x.coords()[i] - y.coords()[i];
              d2 += d * d;
            }
            return Complex(std::exp(-g.sigma * d2));
          },
          [&](const form::DotExp& d) { return std::exp(d.scale * inner(x, y)) + d.shift; },
          [&](const form::TorusProduct&) {
            const std::size_t dim = n.space.kind() == SpaceKind::Circle ? 1 : x.coords().size();
            Complex prod{1.0, 0.0};
            for (std::size_t i = 0; i < dim; ++i) {
              prod *= 2.0 / (2.0 - std::polar(1.0, angle_coord(x, i) - angle_coord(y, i)));
            }
            return prod;
          },
          [&](const form::GroupFourier& f) { return eval_group_fourier(n.space, f.coefficients, x, y); },
          [&](const form::Zero&) { return Complex{}; },
          [&](const form::Composed& c) {
            return c.base(c.left ? c.left->apply(x) : x, c.right ? c.right->apply(y) : y);
          },
          [&](const form::Offset& o) { return o.base(x, y) + o.constant; },
          [&](const form::Combination& c) {
            Complex acc{};
            for (const auto& [w, k] : c.terms) acc += w * k(x, y);
            return acc;
          },
      },
      n.form);
}

void require_space_kind(const Space& s, std::initializer_list<SpaceKind> kinds, std::string_view what) {
  if (std::find(kinds.begin(), kinds.end(), s.kind()) == kinds.end()) {
    throw Error(Errc::WrongSpaceKind, std::string(what) + " is not defined on " + s.describe());
  }
}

}  // namespace

std::string_view form_name(const KernelForm& f) noexcept {
  switch (f.index()) {
    case 0: return "circle_exp_cos";
    case 1: return "gaussian";
    case 2: return "dot_exp";
    case 3: return "torus_product";
    case 4: return "group_fourier";
    case 5: return "zero";
    case 6: return "composed";
    case 7: return "offset";
    case 8: return "combination";
  }
  return "unknown";
}

ScalarKernel ScalarKernel::circle_exp_cos(const Space& s) {
  require_space_kind(s, {SpaceKind::Circle}, "circle_exp_cos");
  return ScalarKernel(std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::CircleExpCos{}}));
}

ScalarKernel ScalarKernel::gaussian(const Space& s, double sigma) {
  require_space_kind(s, {SpaceKind::Euclidean}, "gaussian");
  if (!(sigma > 0.0)) throw Error(Errc::InvalidArgument, "gaussian sigma must be positive");
  return ScalarKernel(std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::Gaussian{sigma}}));
}

ScalarKernel ScalarKernel::dot_exp(const Space& s, double scale, double shift) {
  require_space_kind(s, {SpaceKind::Euclidean, SpaceKind::ComplexSphere}, "dot_exp");
  if (!std::isfinite(scale) || !std::isfinite(shift)) throw Error(Errc::InvalidArgument, "dot_exp parameters");
  return ScalarKernel(std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::DotExp{scale, shift}}));
}

ScalarKernel ScalarKernel::torus_product(const Space& s) {
  require_space_kind(s, {SpaceKind::Circle, SpaceKind::Euclidean}, "torus_product");
  return ScalarKernel(std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::TorusProduct{}}));
}

ScalarKernel ScalarKernel::group_fourier(const Space& s, std::vector<Complex> coefficients) {
  require_space_kind(s, {SpaceKind::FiniteAbelian}, "group_fourier");
  if (static_cast<std::int64_t>(coefficients.size()) != s.order()) {
    throw Error(Errc::WrongLength, "group_fourier needs " + std::to_string(s.order()) + " coefficients, got " +
                                       std::to_string(coefficients.size()));
  }
  return ScalarKernel(
      std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::GroupFourier{std::move(coefficients)}}));
}

ScalarKernel ScalarKernel::zero(const Space& s) {
  return ScalarKernel(std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::Zero{}}));
}

ScalarKernel ScalarKernel::composed(const ScalarKernel& base, std::optional<SymmetryMap> left,
                                    std::optional<SymmetryMap> right) {
  for (const auto* m : {&left, &right}) {
    if (*m && !((*m)->space() == base.space())) {
      throw Error(Errc::SpaceMismatch, "composed kernel: map space differs from kernel space");
    }
  }
  const Space s = base.space();
  return ScalarKernel(std::make_shared<detail::KernelNode>(
      detail::KernelNode{s, form::Composed{base, std::move(left), std::move(right)}}));
}

ScalarKernel ScalarKernel::offset(const ScalarKernel& base, double constant) {
  const Space s = base.space();
  return ScalarKernel(std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::Offset{base, constant}}));
}

ScalarKernel ScalarKernel::combination(std::vector<std::pair<Complex, ScalarKernel>> terms) {
  if (terms.empty()) throw Error(Errc::InvalidArgument, "combination needs at least one term");
  const Space s = terms.front().second.space();
  for (const auto& t : terms) {
    if (!(t.second.space() == s)) throw Error(Errc::SpaceMismatch, "combination terms live on different spaces");
  }
  return ScalarKernel(std::make_shared<detail::KernelNode>(detail::KernelNode{s, form::Combination{std::move(terms)}}));
}

const Space& ScalarKernel::space() const noexcept { return node_->space; }

Complex ScalarKernel::operator()(const Point& x, const Point& y) const {
  require_member(node_->space, x, "kernel evaluation");
  require_member(node_->space, y, "kernel evaluation");
  return evaluate(*node_, x, y);
}

std::string ScalarKernel::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const form::CircleExpCos&) { os << "exp(cos(x - y))"; },
                 [&](const form::Gaussian& g) { os << "exp(-" << g.sigma << " |x - y|^2)"; },
                 [&](const form::DotExp& d) {
                   os << "exp(" << d.scale << " <x, y>)";
                   if (d.shift != 0.0) os << " + " << d.shift;
                 },
                 [&](const form::TorusProduct&) { os << "prod 2 / (2 - e^{i(x_m - y_m)})"; },
                 [&](const form::GroupFourier& f) { os << "group_fourier[" << f.coefficients.size() << "]"; },
                 [&](const form::Zero&) { os << "0"; },
                 [&](const form::Composed& c) {
                   os << "k(" << (c.left ? c.left->describe() : std::string("id")) << " x, "
                      << (c.right ? c.right->describe() : std::string("id")) << " y) with k = " << c.base.describe();
                 },
                 [&](const form::Offset& o) { os << '(' << o.base.describe() << ") + " << o.constant; },
                 [&](const form::Combination& c) { os << "combination of " << c.terms.size() << " kernels"; },
             },
             node_->form);
  return os.str() + " on " + node_->space.describe();
}

MatrixKernel::MatrixKernel(int ell, std::vector<ScalarKernel> entries_row_major)
    : ell_(ell), entries_(std::move(entries_row_major)) {
  if (ell < 1) throw Error(Errc::BadDimensions, "matrix kernel needs ell >= 1");
  if (entries_.size() != static_cast<std::size_t>(ell) * static_cast<std::size_t>(ell)) {
    throw Error(Errc::BadDimensions, "matrix kernel of size " + std::to_string(ell) + " needs " +
                                         std::to_string(ell * ell) + " entries");
  }
  for (const auto& e : entries_) {
    if (!(e.space() == entries_.front().space())) {
      throw Error(Errc::SpaceMismatch, "matrix kernel entries live on different spaces");
    }
  }
}

MatrixKernel MatrixKernel::diagonal(const ScalarKernel& k, int ell) {
  if (ell < 1) throw Error(Errc::BadDimensions, "matrix kernel needs ell >= 1");
  const auto z = ScalarKernel::zero(k.space());
  std::vector<ScalarKernel> entries;
  for (int i = 0; i < ell; ++i) {
    for (int j = 0; j < ell; ++j) entries.push_back(i == j ? k : z);
  }
  return MatrixKernel(ell, std::move(entries));
}

const ScalarKernel& MatrixKernel::entry(int i, int j) const {
  if (i < 0 || j < 0 || i >= ell_ || j >= ell_) throw Error(Errc::BadDimensions, "matrix kernel entry out of range");
  return entries_[static_cast<std::size_t>(i * ell_ + j)];
}

ComplexMatrix MatrixKernel::operator()(const Point& x, const Point& y) const {
  ComplexMatrix out(ell_, ell_);
  for (int i = 0; i < ell_; ++i) {
    for (int j = 0; j < ell_; ++j) out(i, j) = entries_[static_cast<std::size_t>(i * ell_ + j)](x, y);
  }
  return out;
}

ScalarKernel project(const MatrixKernel& K, const ComplexVector& v) {
  if (v.size() != K.ell()) {
    throw Error(Errc::DimensionMismatch, "projection vector has length " + std::to_string(v.size()) + ", expected " +
                                             std::to_string(K.ell()));
  }
  if (v.norm() == 0.0) throw Error(Errc::ZeroVector, "projection onto the zero vector");
  std::vector<std::pair<Complex, ScalarKernel>> terms;
  for (int i = 0; i < K.ell(); ++i) {
    for (int j = 0; j < K.ell(); ++j) {
      const Complex w = v(j) * std::conj(v(i));
      if (w != Complex{}) terms.emplace_back(w, K.entry(i, j));
    }
  }
  return ScalarKernel::combination(std::move(terms));
}

void require_distinct(const Space& s, const std::vector<Point>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_member(s, points[i], "gram");
    for (std::size_t j = 0; j < i; ++j) {
      if (points_equal(s, points[i], points[j])) {
        throw Error(Errc::DuplicatePoints, "points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
}

HermitianMatrix gram(const ScalarKernel& k, const std::vector<Point>& points, double herm_tol) {
  if (points.empty()) throw Error(Errc::InvalidArgument, "gram needs at least one point");
  require_distinct(k.space(), points);
  const auto n = static_cast<Eigen::Index>(points.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) g(a, b) = k(points[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(b)]);
  }
  return HermitianMatrix(std::move(g), herm_tol);
}

HermitianMatrix gram(const MatrixKernel& K, const std::vector<Point>& points, double herm_tol) {
  if (points.empty()) throw Error(Errc::InvalidArgument, "gram needs at least one point");
  require_distinct(K.space(), points);
  const auto n = static_cast<Eigen::Index>(points.size());
  const Eigen::Index ell = K.ell();
  ComplexMatrix g(ell * n, ell * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const ComplexMatrix block = K(points[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(b)]);
      for (Eigen::Index i = 0; i < ell; ++i) {
        for (Eigen::Index j = 0; j < ell; ++j) g(i * n + a, j * n + b) = block(i, j);
      }
    }
  }
  return HermitianMatrix(std::move(g), herm_tol);
}

ComplexVector flatten_coefficients(const std::vector<ComplexVector>& coefficients) {
  if (coefficients.empty()) return {};
  const auto n = static_cast<Eigen::Index>(coefficients.size());
  const Eigen::Index ell = coefficients.front().size();
  ComplexVector out(ell * n);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    const auto& c = coefficients[static_cast<std::size_t>(mu)];
    if (c.size() != ell) throw Error(Errc::DimensionMismatch, "coefficient vectors have different lengths");
    for (Eigen::Index i = 0; i < ell; ++i) out(i * n + mu) = c(i);
  }
  return out;
}

std::vector<ProbePair> sample_probe_pairs(const Space& s, std::size_t count, std::uint64_t seed,
                                          const SamplingOptions& options) {
  std::vector<ProbePair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Two points per probe; distinctness is not required, so a tiny min_sep.
    const double sep = s.is_continuous() ? 2.0 * s.eq_tol() : 0.0;
    const std::size_t n = s.is_continuous() || s.order() >= 2 ? 2 : 1;
    auto pts = sample_distinct(s, n, sep, derive_seed(seed, i), options);
    out.emplace_back(pts.front(), pts.back());
  }
  return out;
}

namespace {

template <class Residual>
InvarianceReport run_invariance(const MatrixKernel& K, const std::vector<SymmetryMap>& maps,
                                const std::vector<ProbePair>& probes, double tol, Residual&& residual) {
  InvarianceReport r;
  r.map_count = maps.size();
  r.probe_count = probes.size();
  r.tol = tol;
  for (const auto& phi : maps) {
    if (!(phi.space() == K.space())) throw Error(Errc::SpaceMismatch, "map and kernel live on different spaces");
    for (const auto& [x, y] : probes) {
      const auto [lhs, rhs] = residual(phi, x, y);
      r.scale = std::max({r.scale, lhs.norm(), rhs.norm()});
      r.max_residual = std::max(r.max_residual, (lhs - rhs).norm());
    }
  }
  r.passed = r.max_residual <= tol * r.scale;
  return r;
}

}  // namespace

InvarianceReport check_unitary_invariance(const MatrixKernel& K, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol) {
  return run_invariance(K, maps, probes, tol, [&](const SymmetryMap& phi, const Point& x, const Point& y) {
    return std::pair{K(phi.apply(x), phi.apply(y)), K(x, y)};
  });
}

InvarianceReport check_unitary_invariance(const ScalarKernel& k, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol) {
  return check_unitary_invariance(MatrixKernel::from_scalar(k), maps, probes, tol);
}

InvarianceReport check_adjoint_invariance(const MatrixKernel& K, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol) {
  for (const auto& phi : maps) {
    if (!phi.has_adjoint()) throw Error(Errc::MissingAdjoint, phi.describe() + " carries no adjoint partner");
  }
  return run_invariance(K, maps, probes, tol, [&](const SymmetryMap& phi, const Point& x, const Point& y) {
    return std::pair{K(x, phi.apply(y)), K(phi.adjoint().apply(x), y)};
  });
}

InvarianceReport check_adjoint_invariance(const ScalarKernel& k, const std::vector<SymmetryMap>& maps,
                                          const std::vector<ProbePair>& probes, double tol) {
  return check_adjoint_invariance(MatrixKernel::from_scalar(k), maps, probes, tol);
}

double hermitian_defect(const MatrixKernel& K, const std::vector<ProbePair>& probes) {
  double defect = 0.0;
  double scale = 0.0;
  for (const auto& [x, y] : probes) {
    const ComplexMatrix a = K(x, y);
    const ComplexMatrix b = K(y, x);
    defect = std::max(defect, (a - b.adjoint()).cwiseAbs().maxCoeff());
    scale = std::max(scale, a.cwiseAbs().maxCoeff());
  }
  return scale > 0.0 ? defect / scale : defect;
}

}  // namespace pdproj
