#include "pdproj/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdproj/error.hpp"

namespace pdproj {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_kind(const Space& s, SpaceKind kind, std::string_view what) {
  if (s.kind() != kind) {
    throw Error(Errc::WrongSpaceKind, std::string(what) + " is not defined on " + s.describe());
  }
}

void validate(const Space& s, const Action& a) {
  std::visit(overloaded{
                 [](const action::Identity&) {},
                 [&](const action::CircleRotation& r) {
                   require_kind(s, SpaceKind::Circle, "circle_rotation");
                   if (!std::isfinite(r.angle)) throw Error(Errc::InvalidArgument, "rotation angle must be finite");
                 },
                 [&](const action::Translation& t) {
                   require_kind(s, SpaceKind::Euclidean, "euclidean_translation");
                   if (static_cast<int>(t.shift.size()) != s.dim()) {
                     throw Error(Errc::DimensionMismatch, "translation vector length does not match " + s.describe());
                   }
                 },
                 [&](const action::Scaling& sc) {
                   require_kind(s, SpaceKind::Euclidean, "euclidean_scaling");
                   if (!std::isfinite(sc.factor)) throw Error(Errc::InvalidArgument, "scaling factor must be finite");
                 },
                 [&](const action::PhaseRotation& r) {
                   require_kind(s, SpaceKind::ComplexSphere, "complex_sphere_rotation");
                   if (!std::isfinite(r.angle)) throw Error(Errc::InvalidArgument, "rotation angle must be finite");
                 },
                 [&](const action::Linear& l) {
                   if (l.matrix.rows() != s.dim() || l.matrix.cols() != s.dim()) {
                     throw Error(Errc::DimensionMismatch, "linear map must be " + std::to_string(s.dim()) + "x" +
                                                              std::to_string(s.dim()));
                   }
                   if (s.kind() == SpaceKind::Euclidean) {
                     if (l.matrix.imag().cwiseAbs().maxCoeff() != 0.0) {
                       throw Error(Errc::InvalidArgument, "linear map on R^m must be real");
                     }
                   } else if (s.kind() == SpaceKind::ComplexSphere) {
                     const auto defect =
                         (l.matrix.adjoint() * l.matrix - ComplexMatrix::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff();
                     if (defect > 1e-10) {
                       throw Error(Errc::InvalidArgument, "linear map on the complex sphere must be unitary");
                     }
                   } else {
                     throw Error(Errc::WrongSpaceKind, "linear map is not defined on " + s.describe());
                   }
                 },
                 [&](const action::GroupTranslation& g) {
                   require_kind(s, SpaceKind::FiniteAbelian, "group_translation");
                   if (g.shift.size() != s.moduli().size()) {
                     throw Error(Errc::DimensionMismatch, "group translation has the wrong number of coordinates");
                   }
                 },
             },
             a);
}

std::string describe_action(const Action& a) {
  std::ostringstream os;
  os.precision(17);
  os << action_kind(a);
  std::visit(overloaded{
                 [](const action::Identity&) {},
                 [&](const action::CircleRotation& r) { os << '(' << r.angle << ')'; },
                 [&](const action::Translation& t) {
                   os << '(';
                   for (std::size_t i = 0; i < t.shift.size(); ++i) os << (i ? ", " : "") << t.shift[i];
                   os << ')';
                 },
                 [&](const action::Scaling& s) { os << '(' << s.factor << ')'; },
                 [&](const action::PhaseRotation& r) { os << '(' << r.angle << ')'; },
                 [&](const action::Linear& l) { os << '(' << l.matrix.rows() << 'x' << l.matrix.cols() << ')'; },
                 [&](const action::GroupTranslation& g) {
                   os << '[';
                   for (std::size_t i = 0; i < g.shift.size(); ++i) os << (i ? ", " : "") << g.shift[i];
                   os << ']';
                 },
             },
             a);
  return os.str();
}

}  // namespace

std::string_view action_kind(const Action& a) noexcept {
  switch (a.index()) {
    case 0: return "identity";
    case 1: return "circle_rotation";
    case 2: return "euclidean_translation";
    case 3: return "euclidean_scaling";
    case 4: return "complex_sphere_rotation";
    case 5: return "linear_map";
    case 6: return "group_translation";
  }
  return "unknown";
}

SymmetryMap SymmetryMap::from_action(const Space& s, Action a) {
  validate(s, a);
  if (auto* g = std::get_if<action::GroupTranslation>(&a)) {
    for (std::size_t r = 0; r < g->shift.size(); ++r) {
      const int q = s.moduli()[r];
      g->shift[r] = ((g->shift[r] % q) + q) % q;
    }
  }
  return SymmetryMap(s, std::move(a));
}

SymmetryMap SymmetryMap::identity(const Space& s) { return from_action(s, action::Identity{}); }
SymmetryMap SymmetryMap::circle_rotation(double angle, const Space& s) {
  return from_action(s, action::CircleRotation{angle});
}
SymmetryMap SymmetryMap::translation(const Space& s, std::vector<double> shift) {
  return from_action(s, action::Translation{std::move(shift)});
}
SymmetryMap SymmetryMap::scaling(const Space& s, double factor) { return from_action(s, action::Scaling{factor}); }
SymmetryMap SymmetryMap::phase_rotation(const Space& s, double angle) {
  return from_action(s, action::PhaseRotation{angle});
}
SymmetryMap SymmetryMap::linear(const Space& s, ComplexMatrix matrix) {
  return from_action(s, action::Linear{std::move(matrix)});
}
SymmetryMap SymmetryMap::group_translation(const Space& s, std::vector<int> shift) {
  return from_action(s, action::GroupTranslation{std::move(shift)});
}

SymmetryMap SymmetryMap::with_adjoint(const SymmetryMap& partner) const {
  if (!(partner.space_ == space_)) throw Error(Errc::SpaceMismatch, "adjoint partner lives on a different space");
  SymmetryMap out = *this;
  out.adjoint_ = partner.action_;
  return out;
}

SymmetryMap SymmetryMap::adjoint() const {
  if (!adjoint_) throw Error(Errc::MissingAdjoint, describe() + " carries no adjoint partner");
  SymmetryMap partner(space_, *adjoint_);
  partner.adjoint_ = action_;
  return partner;
}

Point SymmetryMap::apply(const Point& x) const {
  require_member(space_, x, "SymmetryMap::apply");
  return std::visit(
      overloaded{
          [&](const action::Identity&) { return x; },
          [&](const action::CircleRotation& r) { return Point::angle(x.angle() + r.angle); },
          [&](const action::Translation& t) {
            auto c = x.coords();
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += t.shift[i];
            return Point::euclidean(std::move(c));
          },
          [&](const action::Scaling& s) {
            auto c = x.coords();
            for (auto& v : c) v *= s.factor;
            return Point::euclidean(std::move(c));
          },
          [&](const action::PhaseRotation& r) {
            auto c = x.complex_coords();
            const Complex phase = std::polar(1.0, r.angle);
            for (auto& v : c) v *= phase;
            return Point::complex_sphere_normalized(std::move(c));
          },
          [&](const action::Linear& l) {
            if (space_.kind() == SpaceKind::Euclidean) {
              const auto& c = x.coords();
              std::vector<double> out(c.size(), 0.0);
              for (std::size_t i = 0; i < c.size(); ++i) {
                for (std::size_t j = 0; j < c.size(); ++j) {
                  out[i] += l.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real() * c[j];
                }
              }
              return Point::euclidean(std::move(out));
            }
            const auto& c = x.complex_coords();
            std::vector<Complex> out(c.size(), Complex{});
            for (std::size_t i = 0; i < c.size(); ++i) {
              for (std::size_t j = 0; j < c.size(); ++j) {
                out[i] += l.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * c[j];
              }
            }
            return Point::complex_sphere_normalized(std::move(out));
          },
          [&](const action::GroupTranslation& g) {
            auto e = x.elems();
            for (std::size_t r = 0; r < e.size(); ++r) e[r] += g.shift[r];
            return Point::group(std::move(e), space_);
          },
      },
      action_);
}

Point SymmetryMap::power(const Point& x, int m) const {
  if (m < 0) throw Error(Errc::InvalidArgument, "negative map power");
  Point y = x;
  for (int i = 0; i < m; ++i) y = apply(y);
  return y;
}

std::string SymmetryMap::describe() const {
  std::string s = describe_action(action_) + " on " + space_.describe();
  if (adjoint_) s += " [adjoint " + describe_action(*adjoint_) + "]";
  return s;
}

AperiodicityReport check_aperiodic(const SymmetryMap& phi, const std::vector<Point>& probes, int m_max) {
  if (m_max < 1) throw Error(Errc::InvalidArgument, "m_max must be >= 1");
  AperiodicityReport r;
  r.probe_count = probes.size();
  r.m_max = m_max;
  r.closest_return = std::numeric_limits<double>::infinity();
  const Space& s = phi.space();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    Point y = probes[i];
    for (int m = 1; m <= m_max; ++m) {
      y = phi.apply(y);
      r.closest_return = std::min(r.closest_return, distance(s, y, probes[i]));
      if (!r.violation_found && points_equal(s, y, probes[i])) {
        r.violation_found = true;
        r.violating_probe = i;
        r.violating_power = m;
      }
    }
  }
  return r;
}

bool check_injective_on(const SymmetryMap& phi, const std::vector<Point>& points) {
  std::vector<Point> images;
  images.reserve(points.size());
  for (const auto& x : points) images.push_back(phi.apply(x));
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (points_equal(phi.space(), images[i], images[j])) return false;
    }
  }
  return true;
}

CenterReport check_center(const SymmetryMap& phi, const std::vector<SymmetryMap>& generators,
                          const std::vector<Point>& probes) {
  CenterReport r;
  r.generator_count = generators.size();
  r.probe_count = probes.size();
  const Space& s = phi.space();
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (!(generators[g].space() == s)) {
      throw Error(Errc::SpaceMismatch, "generator " + std::to_string(g) + " lives on a different space");
    }
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const Point a = phi.apply(generators[g].apply(probes[i]));
      const Point b = generators[g].apply(phi.apply(probes[i]));
      const double d = distance(s, a, b);
      r.max_discrepancy = std::max(r.max_discrepancy, d);
      if (!points_equal(s, a, b)) r.violations.push_back({g, i, d});
    }
  }
  return r;
}

OrbitDecomposition orbit_decompose(const SymmetryMap& phi, const std::vector<Point>& points) {
  const Space& s = phi.space();
  const std::size_t n = points.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "orbit_decompose needs at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points_equal(s, points[i], points[j])) {
        throw Error(Errc::DuplicatePoints,
                    "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }

  std::vector<Point> images;
  images.reserve(n);
  for (const auto& x : points) images.push_back(phi.apply(x));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points_equal(s, images[i], images[j])) {
        throw Error(Errc::InjectivityViolation,
                    "images of points " + std::to_string(i) + " and " + std::to_string(j) + " collide");
      }
    }
  }

  OrbitDecomposition d;
  d.tau.assign(n, std::nullopt);
  std::vector<bool> is_tau_image(n, false);
  for (std::size_t mu = 0; mu < n; ++mu) {
    for (std::size_t nu = 0; nu < n; ++nu) {
      if (points_equal(s, images[mu], points[nu])) {
        if (is_tau_image[nu]) {
          throw Error(Errc::InjectivityViolation, "two images match point " + std::to_string(nu));
        }
        d.tau[mu] = nu;
        is_tau_image[nu] = true;
        d.F.push_back(mu);
        break;
      }
    }
  }

  if (d.F.size() == n) {
    throw Error(Errc::PeriodicityDetected, "every image lies in the point set, so tau permutes it");
  }
  // Every tau-chain must leave F; a chain longer than n has revisited an index.
  for (std::size_t mu : d.F) {
    std::size_t cur = mu;
    std::size_t steps = 0;
    while (d.tau[cur]) {
      cur = *d.tau[cur];
      if (++steps > n) {
        throw Error(Errc::PeriodicityDetected, "tau-cycle through index " + std::to_string(mu));
      }
    }
  }

  d.m = d.F.size();
  d.p = n - d.m;
  d.z_points.reserve(d.m + 2 * d.p);
  for (std::size_t mu : d.F) {
    d.z_points.push_back(points[*d.tau[mu]]);
    d.z_source.push_back(mu);
  }
  for (std::size_t eta = 0; eta < n; ++eta) {
    if (!d.tau[eta]) {
      d.z_points.push_back(images[eta]);
      d.z_source.push_back(eta);
    }
  }
  for (std::size_t mu = 0; mu < n; ++mu) {
    if (!is_tau_image[mu]) {
      d.z_points.push_back(points[mu]);
      d.z_source.push_back(mu);
    }
  }
  return d;
}

}  // namespace pdproj
