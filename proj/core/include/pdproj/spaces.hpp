#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pdproj/numcore.hpp"

namespace pdproj {

enum class SpaceKind { Circle, Euclidean, ComplexSphere, FiniteAbelian };

std::string_view to_string(SpaceKind kind) noexcept;

/// A concrete point space: the circle, R^m, the unit sphere of C^q, or a
/// finite product of cyclic groups Z_q1 x ... x Z_ql.
class Space {
 public:
  static constexpr double kDefaultEqTol = 1e-9;

  static Space circle(double eq_tol = kDefaultEqTol);
  static Space euclidean(int dim, double eq_tol = kDefaultEqTol);
  static Space complex_sphere(int dim, double eq_tol = kDefaultEqTol);
  static Space finite_abelian(std::vector<int> moduli);

  [[nodiscard]] SpaceKind kind() const noexcept { return kind_; }
  /// 1 for the circle, m for R^m, q for the complex sphere, l for groups.
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] double eq_tol() const noexcept { return eq_tol_; }
  [[nodiscard]] const std::vector<int>& moduli() const noexcept { return moduli_; }
  /// Group order; throws WrongSpaceKind for continuous spaces.
  [[nodiscard]] std::int64_t order() const;
  [[nodiscard]] bool is_continuous() const noexcept { return kind_ != SpaceKind::FiniteAbelian; }

  [[nodiscard]] std::string describe() const;

  /// Same kind and shape. eq_tol does not take part.
  friend bool operator==(const Space& a, const Space& b) noexcept {
    return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.moduli_ == b.moduli_;
  }

 private:
  Space(SpaceKind kind, int dim, double eq_tol, std::vector<int> moduli)
      : kind_(kind), dim_(dim), eq_tol_(eq_tol), moduli_(std::move(moduli)) {}

  SpaceKind kind_;
  int dim_;
  double eq_tol_;
  std::vector<int> moduli_;
};

/// A point tagged with the kind of space it lives in.
///
/// Circle angles are kept in [-pi, pi); complex sphere points have unit norm;
/// group coordinates are reduced into [0, q_r).
class Point {
 public:
  using GroupElement = std::vector<int>;

  static Point angle(double theta);
  static Point euclidean(std::vector<double> coords);
  static Point complex_sphere(std::vector<Complex> coords, double norm_tol = 1e-12);
  /// Normalizes `coords` onto the unit sphere. Throws ZeroVector for zero input.
  static Point complex_sphere_normalized(std::vector<Complex> coords);
  static Point group(GroupElement elems, const Space& space);

  [[nodiscard]] SpaceKind kind() const noexcept;
  [[nodiscard]] double angle() const;
  [[nodiscard]] const std::vector<double>& coords() const;
  [[nodiscard]] const std::vector<Complex>& complex_coords() const;
  [[nodiscard]] const GroupElement& elems() const;

  [[nodiscard]] bool belongs_to(const Space& s) const noexcept;
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Point& a, const Point& b) = default;

 private:
  using Storage = std::variant<double, std::vector<double>, std::vector<Complex>, GroupElement>;
  explicit Point(Storage s) : data_(std::move(s)) {}
  Storage data_;
};

/// Wraps an angle into [-pi, pi).
double canonical_angle(double theta) noexcept;

/// Metric distance: wrap-around on the circle, Euclidean norm on R^m and C^q,
/// discrete (0 or 1) on finite groups.
double distance(const Space& s, const Point& x, const Point& y);

bool points_equal(const Space& s, const Point& x, const Point& y);

/// Throws SpaceMismatch unless p belongs to s.
void require_member(const Space& s, const Point& p, std::string_view context);

struct SamplingOptions {
  // Euclidean coordinates are drawn uniformly from [-radius, radius].
  double radius = 1.0;
  // Sampled points also keep min_sep away from every point listed here.
  std::vector<Point> avoid;
  int max_attempts_per_point = 10000;
};

inline constexpr double kDefaultMinSep = 1e-3;

/// n points with pairwise distance > min_sep, drawn deterministically from
/// `seed`. On finite groups this is a seeded shuffle of the group.
std::vector<Point> sample_distinct(const Space& s, std::size_t n, double min_sep, std::uint64_t seed,
                                   const SamplingOptions& options = {});

/// All group elements in lexicographic order (last coordinate fastest).
std::vector<Point> group_elements(const Space& s);

/// Position of `x` in group_elements(s).
std::size_t group_index(const Space& s, const Point& x);

/// Componentwise x - y mod q.
Point group_difference(const Space& s, const Point& x, const Point& y);

}  // namespace pdproj
