#include "pdproj/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pdproj/error.hpp"
#include "pdproj/random.hpp"

namespace pdproj {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int floor_mod(int a, int q) { return ((a % q) + q) % q; }

}  // namespace

std::string_view to_string(SpaceKind kind) noexcept {
  switch (kind) {
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::ComplexSphere: return "complex_sphere";
    case SpaceKind::FiniteAbelian: return "finite_abelian";
  }
  return "unknown";
}

Space Space::circle(double eq_tol) {
  if (!(eq_tol > 0.0)) throw Error(Errc::InvalidArgument, "eq_tol must be positive");
  return Space(SpaceKind::Circle, 1, eq_tol, {});
}

Space Space::euclidean(int dim, double eq_tol) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "Euclidean dimension must be >= 1");
  if (!(eq_tol > 0.0)) throw Error(Errc::InvalidArgument, "eq_tol must be positive");
  return Space(SpaceKind::Euclidean, dim, eq_tol, {});
}

Space Space::complex_sphere(int dim, double eq_tol) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "complex sphere dimension must be >= 1");
  if (!(eq_tol > 0.0)) throw Error(Errc::InvalidArgument, "eq_tol must be positive");
  return Space(SpaceKind::ComplexSphere, dim, eq_tol, {});
}

Space Space::finite_abelian(std::vector<int> moduli) {
  if (moduli.empty()) throw Error(Errc::InvalidArgument, "finite abelian group needs at least one factor");
  for (int q : moduli) {
    if (q < 2) throw Error(Errc::InvalidArgument, "every cyclic factor must have order >= 2");
  }
  const int l = static_cast<int>(moduli.size());
  return Space(SpaceKind::FiniteAbelian, l, 0.0, std::move(moduli));
}

std::int64_t Space::order() const {
  if (kind_ != SpaceKind::FiniteAbelian) throw Error(Errc::WrongSpaceKind, "order() needs a finite group");
  std::int64_t n = 1;
  for (int q : moduli_) n *= q;
  return n;
}

std::string Space::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::Circle: os << "S^1"; break;
    case SpaceKind::Euclidean: os << "R^" << dim_; break;
    case SpaceKind::ComplexSphere: os << "Omega^" << dim_; break;
    case SpaceKind::FiniteAbelian:
      for (std::size_t i = 0; i < moduli_.size(); ++i) os << (i ? " x " : "") << "Z_" << moduli_[i];
      break;
  }
  return os.str();
}

double canonical_angle(double theta) noexcept {
  double t = theta - kTwoPi * std::floor((theta + std::numbers::pi) / kTwoPi);
  if (t >= std::numbers::pi) t -= kTwoPi;
  if (t < -std::numbers::pi) t = -std::numbers::pi;
  return t;
}

Point Point::angle(double theta) {
  if (!std::isfinite(theta)) throw Error(Errc::InvalidPoint, "angle must be finite");
  return Point(canonical_angle(theta));
}

Point Point::euclidean(std::vector<double> coords) {
  if (coords.empty()) throw Error(Errc::InvalidPoint, "Euclidean point needs coordinates");
  for (double c : coords) {
    if (!std::isfinite(c)) throw Error(Errc::InvalidPoint, "coordinates must be finite");
  }
  return Point(std::move(coords));
}

Point Point::complex_sphere(std::vector<Complex> coords, double norm_tol) {
  if (coords.empty()) throw Error(Errc::InvalidPoint, "complex sphere point needs coordinates");
  double n2 = 0.0;
  for (const auto& c : coords) n2 += std::norm(c);
  if (std::abs(std::sqrt(n2) - 1.0) > norm_tol) {
    throw Error(Errc::InvalidPoint, "complex sphere point must have unit norm");
  }
  return Point(std::move(coords));
}

Point Point::complex_sphere_normalized(std::vector<Complex> coords) {
  double n2 = 0.0;
  for (const auto& c : coords) n2 += std::norm(c);
  if (!(n2 > 0.0)) throw Error(Errc::ZeroVector, "cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : coords) c *= inv;
  return Point(std::move(coords));
}

Point Point::group(GroupElement elems, const Space& space) {
  if (space.kind() != SpaceKind::FiniteAbelian) throw Error(Errc::WrongSpaceKind, "group point needs a group");
  if (elems.size() != space.moduli().size()) {
    throw Error(Errc::InvalidPoint, "group element has " + std::to_string(elems.size()) + " coordinates, expected " +
                                        std::to_string(space.moduli().size()));
  }
  for (std::size_t r = 0; r < elems.size(); ++r) elems[r] = floor_mod(elems[r], space.moduli()[r]);
  return Point(std::move(elems));
}

SpaceKind Point::kind() const noexcept {
  switch (data_.index()) {
    case 0: return SpaceKind::Circle;
    case 1: return SpaceKind::Euclidean;
    case 2: return SpaceKind::ComplexSphere;
    default: return SpaceKind::FiniteAbelian;
  }
}

double Point::angle() const {
  if (const auto* v = std::get_if<double>(&data_)) return *v;
  throw Error(Errc::WrongSpaceKind, "point is not on the circle");
}

const std::vector<double>& Point::coords() const {
  if (const auto* v = std::get_if<std::vector<double>>(&data_)) return *v;
  throw Error(Errc::WrongSpaceKind, "point is not Euclidean");
}

const std::vector<Complex>& Point::complex_coords() const {
  if (const auto* v = std::get_if<std::vector<Complex>>(&data_)) return *v;
  throw Error(Errc::WrongSpaceKind, "point is not on a complex sphere");
}

const Point::GroupElement& Point::elems() const {
  if (const auto* v = std::get_if<GroupElement>(&data_)) return *v;
  throw Error(Errc::WrongSpaceKind, "point is not a group element");
}

bool Point::belongs_to(const Space& s) const noexcept {
  if (kind() != s.kind()) return false;
  switch (s.kind()) {
    case SpaceKind::Circle: return true;
    case SpaceKind::Euclidean: return static_cast<int>(std::get<1>(data_).size()) == s.dim();
    case SpaceKind::ComplexSphere: return static_cast<int>(std::get<2>(data_).size()) == s.dim();
    case SpaceKind::FiniteAbelian: {
      const auto& g = std::get<3>(data_);
      if (g.size() != s.moduli().size()) return false;
      for (std::size_t r = 0; r < g.size(); ++r) {
        if (g[r] < 0 || g[r] >= s.moduli()[r]) return false;
      }
      return true;
    }
  }
  return false;
}

std::string Point::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind()) {
    case SpaceKind::Circle: os << angle(); break;
    case SpaceKind::Euclidean: {
      os << '(';
      const auto& c = coords();
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
      os << ')';
      break;
    }
    case SpaceKind::ComplexSphere: {
      os << '(';
      const auto& c = complex_coords();
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i].real() << '+' << c[i].imag() << 'i';
      os << ')';
      break;
    }
    case SpaceKind::FiniteAbelian: {
      os << '[';
      const auto& g = elems();
      for (std::size_t i = 0; i < g.size(); ++i) os << (i ? ", " : "") << g[i];
      os << ']';
      break;
    }
  }
  return os.str();
}

void require_member(const Space& s, const Point& p, std::string_view context) {
  if (!p.belongs_to(s)) {
    throw Error(Errc::SpaceMismatch,
                std::string(context) + ": point " + p.describe() + " does not belong to " + s.describe());
  }
}

double distance(const Space& s, const Point& x, const Point& y) {
  require_member(s, x, "distance");
  require_member(s, y, "distance");
  switch (s.kind()) {
    case SpaceKind::Circle: return std::abs(std::remainder(x.angle() - y.angle(), kTwoPi));
    case SpaceKind::Euclidean: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < x.coords().size(); ++i) {
        const double d = x.coords()[i] - y.coords()[i];
        d2 += d * d;
      }
      return std::sqrt(d2);
    }
    case SpaceKind::ComplexSphere: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < x.complex_coords().size(); ++i) {
        d2 += std::norm(x.complex_coords()[i] - y.complex_coords()[i]);
      }
      return std::sqrt(d2);
    }
    case SpaceKind::FiniteAbelian: return x.elems() == y.elems() ? 0.0 : 1.0;
  }
  return 0.0;
}

bool points_equal(const Space& s, const Point& x, const Point& y) {
  if (s.kind() == SpaceKind::FiniteAbelian) {
    require_member(s, x, "points_equal");
    require_member(s, y, "points_equal");
    return x.elems() == y.elems();
  }
  return distance(s, x, y) <= s.eq_tol();
}

namespace {

Point draw_point(const Space& s, Rng& rng, double radius) {
  switch (s.kind()) {
    case SpaceKind::Circle: return Point::angle(rng.uniform(-std::numbers::pi, std::numbers::pi));
    case SpaceKind::Euclidean: {
      std::vector<double> c(static_cast<std::size_t>(s.dim()));
      for (auto& v : c) v = rng.uniform(-radius, radius);
      return Point::euclidean(std::move(c));
    }
    case SpaceKind::ComplexSphere: {
      // Normalized complex Gaussians are uniform on the sphere.
      std::vector<Complex> c(static_cast<std::size_t>(s.dim()));
      for (auto& v : c) v = rng.complex_normal();
      return Point::complex_sphere_normalized(std::move(c));
    }
    case SpaceKind::FiniteAbelian: break;
  }
  throw Error(Errc::WrongSpaceKind, "draw_point on a finite group");
}

}  // namespace

std::vector<Point> sample_distinct(const Space& s, std::size_t n, double min_sep, std::uint64_t seed,
                                   const SamplingOptions& options) {
  Rng rng(seed);
  if (s.kind() == SpaceKind::FiniteAbelian) {
    auto all = group_elements(s);
    if (n > all.size()) {
      throw Error(Errc::TooManyPoints,
                  "requested " + std::to_string(n) + " distinct points from a group of order " + std::to_string(all.size()));
    }
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
      std::swap(all[i], all[j]);
    }
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(n), all.end());
    return all;
  }

  if (!(min_sep > s.eq_tol())) {
    throw Error(Errc::InvalidArgument, "min_sep must exceed the space's eq_tol");
  }
  if (s.kind() == SpaceKind::Euclidean && !(options.radius > 0.0)) {
    throw Error(Errc::InvalidArgument, "sampling radius must be positive");
  }
  for (const auto& a : options.avoid) require_member(s, a, "sample_distinct avoid list");

  std::vector<Point> out;
  out.reserve(n);
  while (out.size() < n) {
    bool placed = false;
    for (int attempt = 0; attempt < options.max_attempts_per_point && !placed; ++attempt) {
      Point candidate = draw_point(s, rng, options.radius);
      const auto too_close = [&](const Point& q) { return distance(s, candidate, q) <= min_sep; };
      if (std::none_of(out.begin(), out.end(), too_close) &&
          std::none_of(options.avoid.begin(), options.avoid.end(), too_close)) {
        out.push_back(std::move(candidate));
        placed = true;
      }
    }
    if (!placed) {
      throw Error(Errc::ExhaustedSampling, "could not place point " + std::to_string(out.size() + 1) + " of " +
                                               std::to_string(n) + " with min_sep " + std::to_string(min_sep));
    }
  }
  return out;
}

std::vector<Point> group_elements(const Space& s) {
  if (s.kind() != SpaceKind::FiniteAbelian) throw Error(Errc::WrongSpaceKind, "group_elements needs a finite group");
  const auto& q = s.moduli();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(s.order()));
  std::vector<int> cur(q.size(), 0);
  for (std::int64_t k = 0; k < s.order(); ++k) {
    out.push_back(Point::group(cur, s));
    for (std::size_t r = q.size(); r-- > 0;) {
      if (++cur[r] < q[r]) break;
      cur[r] = 0;
    }
  }
  return out;
}

std::size_t group_index(const Space& s, const Point& x) {
  require_member(s, x, "group_index");
  std::size_t idx = 0;
  for (std::size_t r = 0; r < s.moduli().size(); ++r) {
    idx = idx * static_cast<std::size_t>(s.moduli()[r]) + static_cast<std::size_t>(x.elems()[r]);
  }
  return idx;
}

Point group_difference(const Space& s, const Point& x, const Point& y) {
  require_member(s, x, "group_difference");
  require_member(s, y, "group_difference");
  Point::GroupElement d(x.elems().size());
  for (std::size_t r = 0; r < d.size(); ++r) d[r] = x.elems()[r] - y.elems()[r];
  return Point::group(std::move(d), s);
}

}  // namespace pdproj
