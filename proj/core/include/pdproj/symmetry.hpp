#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdproj/spaces.hpp"

namespace pdproj {

namespace action {

struct Identity {};
struct CircleRotation {
  double angle;
};
struct Translation {
  std::vector<double> shift;
};
struct Scaling {
  double factor;
};
// x -> e^{i angle} x on the complex sphere.
struct PhaseRotation {
  double angle;
};
// x -> A x. Real A on R^m; unitary A on the complex sphere.
struct Linear {
  ComplexMatrix matrix;
};
struct GroupTranslation {
  std::vector<int> shift;
};

}  // namespace action

using Action = std::variant<action::Identity, action::CircleRotation, action::Translation, action::Scaling,
                            action::PhaseRotation, action::Linear, action::GroupTranslation>;

std::string_view action_kind(const Action& a) noexcept;

/// A map of a space into itself, optionally paired with an adjoint partner.
///
/// The adjoint is stored as an action; adjoint() rebuilds the partner with
/// this map as its own adjoint, so adjoint-of-adjoint is the map itself.
class SymmetryMap {
 public:
  static SymmetryMap identity(const Space& s);
  static SymmetryMap circle_rotation(double angle, const Space& s = Space::circle());
  static SymmetryMap translation(const Space& s, std::vector<double> shift);
  static SymmetryMap scaling(const Space& s, double factor);
  /// x -> -x on R^m.
  static SymmetryMap reflection(const Space& s) { return scaling(s, -1.0); }
  static SymmetryMap phase_rotation(const Space& s, double angle);
  static SymmetryMap linear(const Space& s, ComplexMatrix matrix);
  static SymmetryMap group_translation(const Space& s, std::vector<int> shift);
  static SymmetryMap from_action(const Space& s, Action a);

  [[nodiscard]] SymmetryMap with_adjoint(const SymmetryMap& partner) const;
  [[nodiscard]] SymmetryMap self_adjoint() const { return with_adjoint(*this); }

  [[nodiscard]] const Space& space() const noexcept { return space_; }
  [[nodiscard]] const Action& action() const noexcept { return action_; }
  [[nodiscard]] bool has_adjoint() const noexcept { return adjoint_.has_value(); }
  /// Throws MissingAdjoint when no partner was attached.
  [[nodiscard]] SymmetryMap adjoint() const;

  [[nodiscard]] Point apply(const Point& x) const;
  [[nodiscard]] Point operator()(const Point& x) const { return apply(x); }
  /// phi^m(x); m = 0 returns x.
  [[nodiscard]] Point power(const Point& x, int m) const;

  [[nodiscard]] std::string describe() const;

 private:
  SymmetryMap(Space s, Action a) : space_(std::move(s)), action_(std::move(a)) {}

  Space space_;
  Action action_;
  std::optional<Action> adjoint_;
};

/// Finite evidence for (a)periodicity: phi^m(x) == x for some probe x and
/// 1 <= m <= m_max. Absence of a violation is evidence, not proof.
struct AperiodicityReport {
  std::size_t probe_count = 0;
  int m_max = 0;
  bool violation_found = false;
  std::size_t violating_probe = 0;
  int violating_power = 0;
  // Smallest distance d(phi^m(x), x) seen over all probes and powers.
  double closest_return = 0.0;
};

AperiodicityReport check_aperiodic(const SymmetryMap& phi, const std::vector<Point>& probes, int m_max);

/// True iff the images of the (distinct) points are pairwise distinct.
bool check_injective_on(const SymmetryMap& phi, const std::vector<Point>& points);

struct CenterViolation {
  std::size_t generator = 0;
  std::size_t probe = 0;
  double discrepancy = 0.0;
};

/// Finite evidence that phi commutes with each generator on the probes.
struct CenterReport {
  std::size_t generator_count = 0;
  std::size_t probe_count = 0;
  double max_discrepancy = 0.0;
  std::vector<CenterViolation> violations;

  [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

CenterReport check_center(const SymmetryMap& phi, const std::vector<SymmetryMap>& generators,
                          const std::vector<Point>& probes);

/// Index bookkeeping for {phi(x_1..x_n)} u {x_1..x_n} under an aperiodic
/// injective phi.
///
/// F holds the indices whose image is again in the list, tau maps them to the
/// index of that image. z_points lists the m + 2p distinct points in three
/// blocks: images of F (m), images of the complement of F (p), and the points
/// that are not tau-images (p). Within each block the order follows the
/// ascending source index recorded in z_source.
struct OrbitDecomposition {
  std::vector<std::size_t> F;
  std::vector<std::optional<std::size_t>> tau;  // size n; engaged iff index in F
  std::size_t m = 0;
  std::size_t p = 0;
  std::vector<Point> z_points;
  std::vector<std::size_t> z_source;

  [[nodiscard]] std::size_t n() const noexcept { return tau.size(); }
  [[nodiscard]] std::size_t image_of_f_begin() const noexcept { return 0; }
  [[nodiscard]] std::size_t image_of_complement_begin() const noexcept { return m; }
  [[nodiscard]] std::size_t not_in_tau_f_begin() const noexcept { return m + p; }
};

OrbitDecomposition orbit_decompose(const SymmetryMap& phi, const std::vector<Point>& points);

}  // namespace pdproj
