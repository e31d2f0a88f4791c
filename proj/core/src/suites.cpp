#include "pdproj/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "pdproj/counterexample.hpp"
#include "pdproj/error.hpp"
#include "pdproj/fourier.hpp"
#include "pdproj/io.hpp"
#include "pdproj/kernels.hpp"
#include "pdproj/random.hpp"
#include "pdproj/symmetry.hpp"

namespace pdproj {

namespace {

using Json = nlohmann::json;

// Sub-seed streams. Each check draws from its own stream so adding a check
// never shifts the numbers another one sees.
enum Stream : std::uint64_t {
  kGenerators = 1,
  kProbePairs,
  kProbePoints,
  kPsdSets,
  kProjectionVectors,
  kProjectionSets,
  kShiftSets,
  kInstances,
  kControls,
};

std::uint64_t stream(const SuiteConfig& c, Stream s, std::uint64_t index = 0) {
  return derive_seed(derive_seed(c.seed, s), index);
}

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw Error(Errc::ConfigError, field + ": " + msg);
}

double param_number(const SuiteConfig& c, const char* key) {
  const auto it = c.parameters.find(key);
  if (it == c.parameters.end() || !it->is_number()) config_error(std::string("parameters.") + key, "expected a number");
  return it->get<double>();
}

std::size_t param_count(const SuiteConfig& c, const char* key, std::size_t min = 1) {
  const auto it = c.parameters.find(key);
  if (it == c.parameters.end() || !it->is_number_integer() || it->get<std::int64_t>() < static_cast<std::int64_t>(min)) {
    config_error(std::string("parameters.") + key, "expected an integer >= " + std::to_string(min));
  }
  return it->get<std::size_t>();
}

bool param_bool(const SuiteConfig& c, const char* key) {
  const auto it = c.parameters.find(key);
  if (it == c.parameters.end() || !it->is_boolean()) config_error(std::string("parameters.") + key, "expected a boolean");
  return it->get<bool>();
}

std::vector<double> param_vector(const SuiteConfig& c, const char* key, std::size_t dim) {
  const auto it = c.parameters.find(key);
  if (it == c.parameters.end() || !it->is_array() || it->size() != dim) {
    config_error(std::string("parameters.") + key, "expected an array of " + std::to_string(dim) + " numbers");
  }
  std::vector<double> v;
  for (const auto& e : *it) {
    if (!e.is_number()) config_error(std::string("parameters.") + key, "expected numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

int param_dim(const SuiteConfig& c) {
  const std::size_t d = param_count(c, "dim");
  if (d > 64) config_error("parameters.dim", "must be at most 64");
  return static_cast<int>(d);
}

Json verdict_evidence(const PDVerdict& v) {
  return {{"kind", std::string(to_string(v.kind))},
          {"min_eigenvalue", v.min_eigenvalue},
          {"relative_min_eigenvalue", v.relative_min_eigenvalue()},
          {"numeric_rank", v.numeric_rank},
          {"scale", v.scale}};
}

Json invariance_evidence(const InvarianceReport& r) {
  return {{"maps", r.map_count},
          {"probes", r.probe_count},
          {"max_residual", r.max_residual},
          {"relative_residual", r.relative_residual()},
          {"scale", r.scale},
          {"tol", r.tol}};
}

CheckRecord make_record(std::string name, std::string_view anchor, bool passed, Json evidence = Json::object()) {
  CheckRecord r;
  r.name = std::move(name);
  r.anchor = std::string(anchor);
  r.passed = passed;
  r.evidence = std::move(evidence);
  return r;
}

CheckRecord observation(std::string name, std::string_view anchor, Json evidence, std::string note = {}) {
  CheckRecord r = make_record(std::move(name), anchor, true, std::move(evidence));
  r.observation = true;
  r.note = std::move(note);
  return r;
}

// Runs one check; a library error turns into a failed record.
void guarded(SuiteReport& report, const std::string& name, std::string_view anchor,
             const std::function<void()>& check) {
  try {
    check();
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    CheckRecord r = make_record(name, anchor, false);
    r.note = e.what();
    report.records.push_back(std::move(r));
  }
}

ComplexVector random_vector(Rng& rng, int ell) {
  ComplexVector v(ell);
  do {
    for (int i = 0; i < ell; ++i) v(i) = rng.complex_normal();
  } while (v.norm() == 0.0);
  return v;
}

Json vector_json(const ComplexVector& v) { return io::to_json(v); }

SamplingOptions sampling(const SuiteConfig& c, std::vector<Point> avoid = {}) {
  SamplingOptions o;
  o.radius = c.radius;
  o.avoid = std::move(avoid);
  return o;
}

// `fixed` followed by n - |fixed| random points kept min_sep away from it.
std::vector<Point> point_set(const Space& s, const SuiteConfig& c, std::size_t n, const std::vector<Point>& fixed,
                             std::uint64_t seed) {
  std::vector<Point> pts = fixed;
  if (n > fixed.size()) {
    auto extra = sample_distinct(s, n - fixed.size(), c.min_sep, seed, sampling(c, fixed));
    pts.insert(pts.end(), extra.begin(), extra.end());
  }
  return pts;
}

Space euclidean_space(const SuiteConfig& c) { return Space::euclidean(param_dim(c)); }

// ---------------------------------------------------------------------------
// Counterexample suites
// ---------------------------------------------------------------------------

struct CounterexampleSetup {
  Space space;
  ScalarKernel base;
  SymmetryMap phi;
  std::vector<SymmetryMap> generators;
  CounterexampleKernel kernel;
  Point witness_point;
  // Points every projection set starts with.
  std::vector<Point> projection_anchor_points;
  // Points kept out of aperiodicity probes (fixed points of phi).
  std::vector<Point> excluded;
  double invariance_tol;
  Json conventions;
};

void kernel_invariance_checks(SuiteReport& report, const CounterexampleSetup& s,
                              const std::vector<ProbePair>& pairs) {
  const bool adjoint = s.kernel.variant != CounterexampleVariant::Unitary;
  const auto anchor_k = adjoint ? anchor::kAdjointInvariance : anchor::kKernelInvariance;
  guarded(report, "base kernel invariance", anchor_k, [&] {
    const auto r = adjoint ? check_adjoint_invariance(s.base, s.generators, pairs, s.invariance_tol)
                           : check_unitary_invariance(s.base, s.generators, pairs, s.invariance_tol);
    report.records.push_back(make_record("base kernel invariance", anchor_k, r.passed, invariance_evidence(r)));
  });
  guarded(report, "counterexample invariance", anchor::kCounterexampleInvariance, [&] {
    const auto r = adjoint ? check_adjoint_invariance(s.kernel.as_matrix, s.generators, pairs, s.invariance_tol)
                           : check_unitary_invariance(s.kernel.as_matrix, s.generators, pairs, s.invariance_tol);
    Json ev = invariance_evidence(r);
    ev["variant"] = std::string(to_string(s.kernel.variant));
    report.records.push_back(make_record("counterexample invariance", anchor::kCounterexampleInvariance, r.passed, ev));
  });
}

void map_hypothesis_checks(SuiteReport& report, const SuiteConfig& c, const CounterexampleSetup& s) {
  guarded(report, "map hypotheses", anchor::kCentralMap, [&] {
    const auto probes = sample_distinct(s.space, c.probes, kDefaultMinSep, stream(c, kProbePoints), sampling(c, s.excluded));

    const auto center = check_center(s.phi, s.generators, probes);
    report.records.push_back(make_record("map is central", anchor::kCentralMap, center.passed(),
                                         {{"generators", center.generator_count},
                                          {"probes", center.probe_count},
                                          {"max_discrepancy", center.max_discrepancy},
                                          {"violations", center.violations.size()}}));

    const auto ap = check_aperiodic(s.phi, probes, c.m_max);
    Json ev{{"probes", ap.probe_count}, {"m_max", ap.m_max}, {"closest_return", ap.closest_return}};
    if (ap.violation_found) {
      ev["violating_probe"] = ap.violating_probe;
      ev["violating_power"] = ap.violating_power;
    }
    report.records.push_back(make_record("map is aperiodic", anchor::kAperiodicMap, !ap.violation_found, ev));

    const bool inj = check_injective_on(s.phi, probes);
    report.records.push_back(make_record("map is injective", anchor::kInjectiveMap, inj, {{"probes", probes.size()}}));
  });
}

void degeneracy_checks(SuiteReport& report, const SuiteConfig& c, const CounterexampleSetup& s) {
  const double degeneracy_tol = param_number(c, "degeneracy_tol");
  const double angle_tol = param_number(c, "angle_tol");
  const double witness_tol = param_number(c, "witness_tol");
  const bool shifted = s.kernel.variant == CounterexampleVariant::ShiftedAdjoint;
  const auto anchor_w = shifted ? anchor::kShiftedCounterexample : anchor::kCounterexampleNotStrict;

  guarded(report, "degeneracy witness", anchor_w, [&] {
    const auto w = witness(s.kernel, s.witness_point, c.tolerances);
    const auto G = gram(s.kernel.as_matrix, w.points, c.tolerances.herm);
    const auto v = classify(G, c.tolerances.pd);
    const ComplexVector cvec = w.flattened();

    // Null directions at the looser degeneracy threshold; the bottom
    // eigenvector stands in when none qualifies.
    const auto eig = decompose(G);
    std::vector<ComplexVector> null_basis;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      if (std::abs(eig.values(i)) <= degeneracy_tol * v.scale) null_basis.push_back(eig.vectors.col(i));
    }
    if (null_basis.empty()) null_basis.push_back(eig.vectors.col(0));
    const double angle = angle_to_span(cvec, null_basis);

    const double rel_residual = w.scale > 0.0 ? w.residual_norm / w.scale : w.residual_norm;
    const bool passed = v.kind != PDKind::PositiveDefinite && v.kind != PDKind::Indefinite &&
                        v.relative_min_eigenvalue() <= degeneracy_tol && angle <= angle_tol &&
                        rel_residual <= witness_tol;
    Json pts = Json::array();
    for (const auto& p : w.points) pts.push_back(io::to_json(p));
    Json coeffs = Json::array();
    for (const auto& a : w.coefficients) coeffs.push_back(vector_json(a));
    report.records.push_back(make_record("degeneracy witness", anchor_w, passed,
                                         {{"points", pts},
                                          {"coefficients", coeffs},
                                          {"form_value", w.achieved_form_value},
                                          {"residual_norm", w.residual_norm},
                                          {"relative_residual", rel_residual},
                                          {"null_direction_angle", angle},
                                          {"null_space_dim", null_basis.size()},
                                          {"fixed_point_case", w.fixed_point_case},
                                          {"verdict", verdict_evidence(v)}}));
  });

  guarded(report, "counterexample positive semidefinite", anchor::kCounterexamplePsd, [&] {
    std::vector<Point> fixed{s.witness_point};
    const Point image = s.phi(s.witness_point);
    if (!points_equal(s.space, image, s.witness_point)) fixed.push_back(image);
    if (s.kernel.origin) fixed.insert(fixed.begin(), *s.kernel.origin);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t indefinite = 0;
    std::size_t degenerate = 0;
    for (std::size_t t = 0; t < c.point_sets; ++t) {
      const auto pts = point_set(s.space, c, std::max(c.n_points, fixed.size()), fixed, stream(c, kPsdSets, t));
      const auto v = classify(gram(s.kernel.as_matrix, pts, c.tolerances.herm), c.tolerances.pd);
      worst = std::min(worst, v.relative_min_eigenvalue());
      indefinite += v.kind == PDKind::Indefinite;
      degenerate += v.kind == PDKind::PositiveSemidefiniteDegenerate;
    }
    report.records.push_back(make_record("counterexample positive semidefinite", anchor::kCounterexamplePsd,
                                         indefinite == 0,
                                         {{"point_sets", c.point_sets},
                                          {"indefinite", indefinite},
                                          {"degenerate", degenerate},
                                          {"worst_relative_min_eigenvalue", worst}}));
  });
}

void projection_checks(SuiteReport& report, const SuiteConfig& c, const CounterexampleSetup& s) {
  // The point sets are shared by every projection vector.
  std::vector<std::vector<Point>> sets;
  try {
    for (std::size_t t = 0; t < c.point_sets; ++t) {
      sets.push_back(point_set(s.space, c, c.n_points, s.projection_anchor_points, stream(c, kProjectionSets, t)));
    }
  } catch (const Error& e) {
    CheckRecord r = make_record("projection point sets", anchor::kProjectionStrictness, false);
    r.note = e.what();
    report.records.push_back(std::move(r));
    return;
  }
  for (std::size_t i = 0; i < c.projections; ++i) {
    const std::string name = "projection " + std::to_string(i) + " strictly positive definite";
    guarded(report, name, anchor::kProjectionStrictness, [&] {
      Rng rng(stream(c, kProjectionVectors, i));
      const ComplexVector v = random_vector(rng, s.kernel.as_matrix.ell());
      const ScalarKernel kv = project(s.kernel.as_matrix, v);
      double worst = std::numeric_limits<double>::infinity();
      std::size_t failures = 0;
      for (const auto& pts : sets) {
        const auto verdict = classify(gram(kv, pts, c.tolerances.herm), c.tolerances.pd);
        worst = std::min(worst, verdict.relative_min_eigenvalue());
        failures += verdict.kind != PDKind::PositiveDefinite;
      }
      report.records.push_back(make_record(name, anchor::kProjectionStrictness, failures == 0,
                                           {{"vector", vector_json(v)},
                                            {"point_sets", sets.size()},
                                            {"points_per_set", c.n_points},
                                            {"not_positive_definite", failures},
                                            {"worst_relative_min_eigenvalue", worst}}));
    });
  }
}

void run_counterexample(SuiteReport& report, const SuiteConfig& c, const CounterexampleSetup& s) {
  report.environment["conventions"] = s.conventions;
  SamplingOptions pair_options = sampling(c);
  const auto pairs = sample_probe_pairs(s.space, c.probes, stream(c, kProbePairs), pair_options);
  kernel_invariance_checks(report, s, pairs);
  map_hypothesis_checks(report, c, s);
  degeneracy_checks(report, c, s);
  projection_checks(report, c, s);
}

std::vector<SymmetryMap> random_rotations(const SuiteConfig& c, std::size_t count) {
  Rng rng(stream(c, kGenerators));
  std::vector<SymmetryMap> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(SymmetryMap::circle_rotation(rng.uniform(-std::numbers::pi, std::numbers::pi)));
  return out;
}

void suite_circle(SuiteReport& report, const SuiteConfig& c) {
  const double rho = param_number(c, "rho");
  const Space s = Space::circle();
  const auto k = ScalarKernel::circle_exp_cos(s);
  const auto phi = SymmetryMap::circle_rotation(rho, s);
  const Point x = Point::angle(param_number(c, "witness_angle"));
  CounterexampleSetup setup{s, k, phi, random_rotations(c, param_count(c, "generators")), build_unitary(k, phi), x,
                            {}, {}, param_number(c, "invariance_tol"), {{"rho", rho}}};
  if (param_bool(c, "include_witness")) setup.projection_anchor_points = {x, phi(x)};
  run_counterexample(report, c, setup);
}

void suite_gaussian(SuiteReport& report, const SuiteConfig& c) {
  const Space s = euclidean_space(c);
  const double sigma = param_number(c, "sigma");
  const auto z = param_vector(c, "z", static_cast<std::size_t>(s.dim()));
  const auto k = ScalarKernel::gaussian(s, sigma);
  const auto phi = SymmetryMap::translation(s, z);
  std::vector<SymmetryMap> gens;
  Rng rng(stream(c, kGenerators));
  for (std::size_t i = 0; i < param_count(c, "translations"); ++i) {
    std::vector<double> t(static_cast<std::size_t>(s.dim()));
    for (auto& e : t) e = rng.uniform(-c.radius, c.radius);
    gens.push_back(SymmetryMap::translation(s, t));
  }
  const Point x = Point::euclidean(std::vector<double>(static_cast<std::size_t>(s.dim()), 0.0));
  CounterexampleSetup setup{s, k, phi, gens, build_unitary(k, phi), x,
                            {}, {}, param_number(c, "invariance_tol"), {{"sigma", sigma}, {"z", z}}};
  if (param_bool(c, "include_witness")) setup.projection_anchor_points = {x, phi(x)};
  run_counterexample(report, c, setup);
}

// Random real matrices paired with their transposes: the adjoint semigroup
// of a dot-product kernel on R^m.
std::vector<SymmetryMap> random_linear_with_transpose(const Space& s, const SuiteConfig& c, std::size_t count) {
  Rng rng(stream(c, kGenerators));
  std::vector<SymmetryMap> out;
  const int m = s.dim();
  for (std::size_t i = 0; i < count; ++i) {
    ComplexMatrix a(m, m);
    for (int r = 0; r < m; ++r)
      for (int q = 0; q < m; ++q) a(r, q) = rng.normal() / std::sqrt(static_cast<double>(m));
    out.push_back(SymmetryMap::linear(s, a).with_adjoint(SymmetryMap::linear(s, a.transpose())));
  }
  return out;
}

void suite_dotproduct(SuiteReport& report, const SuiteConfig& c) {
  const Space s = euclidean_space(c);
  const double r = param_number(c, "r");
  const auto k = ScalarKernel::dot_exp(s);
  const auto phi = SymmetryMap::scaling(s, r).self_adjoint();
  const Point origin = Point::euclidean(std::vector<double>(static_cast<std::size_t>(s.dim()), 0.0));
  std::vector<double> e1(static_cast<std::size_t>(s.dim()), 0.0);
  e1[0] = 1.0;
  const Point x = Point::euclidean(e1);
  CounterexampleSetup setup{s,
                            k,
                            phi,
                            random_linear_with_transpose(s, c, param_count(c, "generators")),
                            build_shifted(k, phi, origin),
                            x,
                            {origin},
                            {origin},
                            param_number(c, "invariance_tol"),
                            {{"r", r}, {"k00", k(origin, origin).real()}}};
  run_counterexample(report, c, setup);

  // l(x, y) = k(x, y) - k(0, 0) on nonzero points.
  guarded(report, "shifted scalar kernel strict", anchor::kShiftStrictness, [&] {
    const auto l = ScalarKernel::dot_exp(s, 1.0, -k(origin, origin).real());
    const std::size_t n_max = param_count(c, "shift_points_max");
    Rng sizes(stream(c, kShiftSets, 1u << 20));
    double worst = std::numeric_limits<double>::infinity();
    std::size_t failures = 0;
    for (std::size_t t = 0; t < c.point_sets; ++t) {
      const std::size_t n = 1 + static_cast<std::size_t>(sizes.below(n_max));
      const auto pts = sample_distinct(s, n, c.min_sep, stream(c, kShiftSets, t), sampling(c, {origin}));
      const auto v = classify(gram(l, pts, c.tolerances.herm), c.tolerances.pd);
      worst = std::min(worst, v.relative_min_eigenvalue());
      failures += v.kind != PDKind::PositiveDefinite;
    }
    report.records.push_back(make_record("shifted scalar kernel strict", anchor::kShiftStrictness, failures == 0,
                                         {{"point_sets", c.point_sets},
                                          {"max_points", n_max},
                                          {"not_positive_definite", failures},
                                          {"worst_relative_min_eigenvalue", worst}}));
  });
}

ComplexMatrix random_unitary(Rng& rng, int q) {
  ComplexMatrix a(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) a(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix u = qr.householderQ() * ComplexMatrix::Identity(q, q);
  return u;
}

void suite_complex_sphere(SuiteReport& report, const SuiteConfig& c) {
  const Space s = Space::complex_sphere(param_dim(c));
  const double theta = param_number(c, "theta");
  const auto k = ScalarKernel::dot_exp(s);
  const auto phi = SymmetryMap::phase_rotation(s, theta);
  Rng rng(stream(c, kGenerators));
  std::vector<SymmetryMap> gens;
  for (std::size_t i = 0; i < param_count(c, "generators"); ++i) gens.push_back(SymmetryMap::linear(s, random_unitary(rng, s.dim())));
  std::vector<Complex> e1(static_cast<std::size_t>(s.dim()), Complex{0.0, 0.0});
  e1[0] = 1.0;
  const Point x = Point::complex_sphere(e1);
  CounterexampleSetup setup{s, k, phi, gens, build_unitary(k, phi), x,
                            {}, {}, param_number(c, "invariance_tol"), {{"theta", theta}}};
  if (param_bool(c, "include_witness")) setup.projection_anchor_points = {x, phi(x)};
  run_counterexample(report, c, setup);
}

// ---------------------------------------------------------------------------
// Orbit decomposition
// ---------------------------------------------------------------------------

struct OrbitInstance {
  SymmetryMap phi;
  std::vector<Point> points;
};

// A few phi-chains x, phi x, phi^2 x, ... plus loose points, shuffled.
OrbitInstance orbit_instance(const SuiteConfig& c, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n_max = std::max<std::size_t>(c.n_points, 1);
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(n_max));
  const auto kind = rng.below(3);
  const int dim = 1 + static_cast<int>(rng.below(3));

  std::optional<SymmetryMap> phi;
  Space space = Space::circle();
  std::vector<Point> avoid;
  if (kind == 0) {
    space = Space::euclidean(dim);
    std::vector<double> shift(static_cast<std::size_t>(dim));
    for (auto& e : shift) e = rng.uniform(-1.0, 1.0);
    if (std::abs(shift[0]) < 0.1) shift[0] = 0.5;
    phi = SymmetryMap::translation(space, shift);
  } else if (kind == 1) {
    space = Space::euclidean(dim);
    // |factor| away from 0 and 1 so nothing but the origin is periodic.
    const double mag = rng.uniform(1.2, 2.0);
    const double f = rng.below(2) ? (rng.below(2) ? mag : 1.0 / mag) : -mag;
    phi = SymmetryMap::scaling(space, f);
    avoid.push_back(Point::euclidean(std::vector<double>(static_cast<std::size_t>(dim), 0.0)));
  } else {
    // Irrational multiples of pi do not return within the instance sizes.
    phi = SymmetryMap::circle_rotation(rng.uniform(0.3, 2.8) * std::numbers::sqrt2);
  }

  std::vector<Point> pts;
  while (pts.size() < n) {
    const std::size_t chain = 1 + static_cast<std::size_t>(rng.below(n - pts.size()));
    SamplingOptions o;
    o.radius = 1.0;
    o.avoid = avoid;
    for (const auto& p : pts) o.avoid.push_back(p);
    Point x = sample_distinct(space, 1, 0.05, rng.next_u64(), o).front();
    for (std::size_t i = 0; i < chain; ++i) {
      const bool clash = std::any_of(pts.begin(), pts.end(), [&](const Point& p) { return points_equal(space, p, x); });
      if (clash) break;
      pts.push_back(x);
      x = (*phi)(x);
    }
  }
  for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
  return {*phi, std::move(pts)};
}

// Direct recomputation: images looked up by linear scan, z as a deduplicated
// union of points and images.
std::optional<std::string> orbit_mismatch(const OrbitInstance& inst, const OrbitDecomposition& d) {
  const Space& s = inst.phi.space();
  const std::size_t n = inst.points.size();
  if (d.n() != n) return "tau size";
  std::vector<Point> z;
  const auto add = [&](const Point& p) {
    if (std::none_of(z.begin(), z.end(), [&](const Point& q) { return points_equal(s, p, q); })) z.push_back(p);
  };
  std::size_t f_count = 0;
  for (std::size_t mu = 0; mu < n; ++mu) {
    const Point img = inst.phi(inst.points[mu]);
    std::optional<std::size_t> hit;
    for (std::size_t nu = 0; nu < n; ++nu) {
      if (points_equal(s, img, inst.points[nu])) hit = nu;
    }
    if (hit != d.tau[mu]) return "tau entry " + std::to_string(mu);
    f_count += hit.has_value();
    add(img);
  }
  for (const auto& p : inst.points) add(p);
  if (f_count != d.m || d.F.size() != d.m) return "|F|";
  if (d.p != n - d.m) return "p";
  if (z.size() != d.m + 2 * d.p || d.z_points.size() != z.size()) return "m + 2p count";
  for (const auto& p : z) {
    if (std::none_of(d.z_points.begin(), d.z_points.end(), [&](const Point& q) { return points_equal(s, p, q); })) {
      return "z_points set";
    }
  }
  return std::nullopt;
}

void suite_orbit(SuiteReport& report, const SuiteConfig& c) {
  std::size_t mismatches = 0;
  std::size_t errors = 0;
  std::size_t total_f = 0;
  std::size_t by_kind[3] = {0, 0, 0};
  Json failures = Json::array();
  for (std::size_t i = 0; i < c.instances; ++i) {
    try {
      const auto inst = orbit_instance(c, stream(c, kInstances, i));
      const auto kind = action_kind(inst.phi.action());
      by_kind[kind == "euclidean_translation" ? 0 : kind == "euclidean_scaling" ? 1 : 2]++;
      const auto d = orbit_decompose(inst.phi, inst.points);
      total_f += d.m;
      if (const auto why = orbit_mismatch(inst, d)) {
        ++mismatches;
        if (failures.size() < 10) failures.push_back({{"instance", i}, {"reason", *why}});
      }
    } catch (const Error& e) {
      ++errors;
      if (failures.size() < 10) failures.push_back({{"instance", i}, {"error", e.what()}});
    }
  }
  report.records.push_back(make_record("orbit decomposition matches oracle", anchor::kOrbitDecomposition,
                                       mismatches == 0 && errors == 0,
                                       {{"instances", c.instances},
                                        {"max_points", c.n_points},
                                        {"translations", by_kind[0]},
                                        {"scalings", by_kind[1]},
                                        {"rotations", by_kind[2]},
                                        {"total_F", total_f},
                                        {"mismatches", mismatches},
                                        {"errors", errors},
                                        {"failures", failures}}));

  // A periodic map must be refused.
  guarded(report, "periodic map refused", anchor::kOrbitDecomposition, [&] {
    const auto phi = SymmetryMap::circle_rotation(std::numbers::pi);
    const std::vector<Point> pts{Point::angle(0.0), Point::angle(std::numbers::pi)};
    bool refused = false;
    try {
      (void)orbit_decompose(phi, pts);
    } catch (const Error& e) {
      refused = e.code() == Errc::PeriodicityDetected;
    }
    report.records.push_back(make_record("periodic map refused", anchor::kOrbitDecomposition, refused));
  });
}

// ---------------------------------------------------------------------------
// Finite abelian groups
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> param_groups(const SuiteConfig& c) {
  std::vector<std::vector<int>> out;
  const auto it = c.parameters.find("groups");
  if (it == c.parameters.end()) return out;
  if (!it->is_array()) config_error("parameters.groups", "expected an array of moduli lists");
  for (const auto& g : *it) {
    std::vector<int> q;
    if (!g.is_array() || g.empty()) config_error("parameters.groups", "expected non-empty moduli lists");
    for (const auto& e : g) {
      if (!e.is_number_integer() || e.get<int>() < 1) config_error("parameters.groups", "moduli must be positive integers");
      q.push_back(e.get<int>());
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::int64_t order_of(const std::vector<int>& q) {
  std::int64_t o = 1;
  for (int e : q) o *= e;
  return o;
}

// Explicit groups first, then random products of cyclic groups with
// min_order <= |G| <= max_order.
Space pick_group(const SuiteConfig& c, std::size_t i, Rng& rng, std::int64_t min_order) {
  const auto explicit_groups = param_groups(c);
  if (i < explicit_groups.size()) return Space::finite_abelian(explicit_groups[i]);
  const auto max_order = static_cast<std::int64_t>(param_count(c, "max_group_order"));
  for (;;) {
    const std::size_t factors = 1 + static_cast<std::size_t>(rng.below(3));
    std::vector<int> q;
    for (std::size_t f = 0; f < factors; ++f) q.push_back(2 + static_cast<int>(rng.below(5)));
    const auto o = order_of(q);
    if (o <= max_order && o >= min_order) return Space::finite_abelian(q);
  }
}

// n_points > 0 requests Grams on n-point subsets; every group must hold them.
std::int64_t validate_group_sizes(const SuiteConfig& c) {
  const auto n = static_cast<std::int64_t>(c.n_points);
  const auto max_order = static_cast<std::int64_t>(param_count(c, "max_group_order"));
  if (n > 0) {
    for (const auto& g : param_groups(c)) {
      if (order_of(g) < n) {
        config_error("n_points", std::to_string(n) + " distinct points requested from a group of order " +
                                     std::to_string(order_of(g)));
      }
    }
    if (n > max_order) {
      config_error("n_points", std::to_string(n) + " distinct points exceed the largest group order " +
                                   std::to_string(max_order));
    }
  }
  return std::max<std::int64_t>(n, 2);
}

struct RandomSpectrum {
  FourierSpectrum spectrum;
  bool planted_degenerate;
  // Null direction of a singular coefficient, when one was planted.
  std::optional<ComplexVector> null_vector;
};

RandomSpectrum random_spectrum(const Space& g, int ell, bool degenerate, Rng& rng) {
  const auto size = static_cast<std::size_t>(g.order());
  std::vector<std::size_t> singular;
  if (degenerate) {
    const std::size_t count = 1 + static_cast<std::size_t>(rng.below(std::min<std::size_t>(size, 3)));
    for (std::size_t i = 0; i < count; ++i) singular.push_back(static_cast<std::size_t>(rng.below(size)));
  }
  const auto is_singular = [&](std::size_t i) { return std::find(singular.begin(), singular.end(), i) != singular.end(); };

  if (ell == 1) {
    std::vector<double> a(size);
    for (std::size_t i = 0; i < size; ++i) a[i] = is_singular(i) ? 0.0 : rng.uniform(0.05, 1.0);
    return {FourierSpectrum::scalar(g, std::move(a)), degenerate, std::nullopt};
  }
  std::vector<ComplexMatrix> a(size);
  std::optional<ComplexVector> null;
  for (std::size_t i = 0; i < size; ++i) {
    if (is_singular(i)) {
      // Rank ell - 1 (or zero when ell - 1 columns collapse by chance).
      ComplexMatrix b(ell, ell - 1);
      for (int r = 0; r < ell; ++r)
        for (int q = 0; q < ell - 1; ++q) b(r, q) = rng.complex_normal() / std::sqrt(2.0 * ell);
      ComplexMatrix m = b * b.adjoint();
      a[i] = (m + m.adjoint()) / 2.0;
      if (!null) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a[i]);
        null = es.eigenvectors().col(0);
      }
    } else {
      ComplexMatrix b(ell, ell);
      for (int r = 0; r < ell; ++r)
        for (int q = 0; q < ell; ++q) b(r, q) = rng.complex_normal() / std::sqrt(2.0 * ell);
      ComplexMatrix m = b * b.adjoint() + 0.05 * ComplexMatrix::Identity(ell, ell);
      a[i] = (m + m.adjoint()) / 2.0;
    }
  }
  return {FourierSpectrum::matrix(g, std::move(a)), degenerate, null};
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void suite_abelian_roundtrip(SuiteReport& report, const SuiteConfig& c) {
  const auto min_order = validate_group_sizes(c);
  const double roundtrip_tol = param_number(c, "roundtrip_tol");
  for (std::size_t i = 0; i < c.instances; ++i) {
    const std::string name = "roundtrip " + std::to_string(i);
    guarded(report, name, anchor::kAbelianFourier, [&] {
      Rng rng(stream(c, kInstances, i));
      const Space g = pick_group(c, i, rng, min_order);
      const int ell = 1 + static_cast<int>(rng.below(3));
      const auto rs = random_spectrum(g, ell, rng.below(2) == 0, rng);
      const auto& spec = rs.spectrum;
      double residual = 0.0;
      bool flagged_pd = true;
      if (ell == 1) {
        const auto psi = synthesize(spec);
        const auto an = analyze(psi, g, c.tolerances.synth);
        std::vector<Complex> want(spec.scalar_coefficients().begin(), spec.scalar_coefficients().end());
        residual = max_abs_diff(an.coefficients, want);
        flagged_pd = an.positive_definite;
      } else {
        // Entry by entry: psi_ij(x) = sum_g (A_g)_ij xi_g(x).
        const auto psi = synthesize_matrix(spec);
        for (int r = 0; r < ell; ++r) {
          for (int q = 0; q < ell; ++q) {
            std::vector<Complex> entry;
            std::vector<Complex> want;
            for (std::size_t x = 0; x < psi.size(); ++x) {
              entry.push_back(psi[x](r, q));
              want.push_back(spec.matrix_coefficients()[x](r, q));
            }
            residual = std::max(residual, max_abs_diff(analyze(entry, g, c.tolerances.synth).coefficients, want));
          }
        }
      }
      report.records.push_back(make_record(name, anchor::kAbelianFourier, residual < roundtrip_tol && flagged_pd,
                                           {{"group", g.moduli()},
                                            {"order", g.order()},
                                            {"ell", ell},
                                            {"residual", residual},
                                            {"analysis_positive_definite", flagged_pd}}));
    });
  }
}

void suite_abelian_strictness(SuiteReport& report, const SuiteConfig& c) {
  const auto min_order = validate_group_sizes(c);
  for (std::size_t i = 0; i < c.instances; ++i) {
    const std::string name = "strictness " + std::to_string(i);
    guarded(report, name, anchor::kAbelianStrictness, [&] {
      Rng rng(stream(c, kInstances, i));
      const Space g = pick_group(c, i, rng, min_order);
      const int ell = 1 + static_cast<int>(i % 3);
      const auto rs = random_spectrum(g, ell, rng.below(2) == 0, rng);
      const bool criterion = strict_criterion(rs.spectrum, c.tolerances);
      const MatrixKernel K = spectrum_kernel(rs.spectrum);
      const auto brute = brute_force_strict(K, c.tolerances.pd);
      const bool brute_strict = brute.kind == PDKind::PositiveDefinite;
      Json ev{{"group", g.moduli()},
              {"ell", ell},
              {"planted_degenerate", rs.planted_degenerate},
              {"criterion_strict", criterion},
              {"brute_force", verdict_evidence(brute)}};

      // Strict kernels stay strict on every subset.
      bool subset_ok = true;
      if (c.n_points > 0 && brute_strict) {
        const auto pts = sample_distinct(g, c.n_points, 0.5, rng.next_u64());
        subset_ok = classify(gram(K, pts, c.tolerances.herm), c.tolerances.pd).kind == PDKind::PositiveDefinite;
        ev["subset_points"] = c.n_points;
        ev["subset_positive_definite"] = subset_ok;
      }
      report.records.push_back(make_record(name, anchor::kAbelianStrictness, criterion == brute_strict && subset_ok, ev));

      if (ell >= 2) {
        // Projections are all strict exactly when the kernel is.
        std::vector<ComplexVector> vs;
        for (std::size_t t = 0; t < param_count(c, "projection_trials"); ++t) vs.push_back(random_vector(rng, ell));
        if (rs.null_vector) vs.push_back(*rs.null_vector);
        bool all_strict = true;
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& v : vs) {
          const auto pv = brute_force_strict(project(K, v), c.tolerances.pd);
          all_strict = all_strict && pv.kind == PDKind::PositiveDefinite;
          worst = std::min(worst, pv.relative_min_eigenvalue());
        }
        report.records.push_back(make_record("projection equivalence " + std::to_string(i), anchor::kAbelianProjection,
                                             all_strict == brute_strict,
                                             {{"group", g.moduli()},
                                              {"ell", ell},
                                              {"vectors", vs.size()},
                                              {"kernel_strict", brute_strict},
                                              {"all_projections_strict", all_strict},
                                              {"worst_relative_min_eigenvalue", worst}}));
      }
    });
  }
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

void suite_embed(SuiteReport& report, const SuiteConfig& c) {
  const double rho = param_number(c, "rho");
  const int ell = static_cast<int>(param_count(c, "ell", 2));
  const double match_tol = param_number(c, "match_tol");
  const Space s = Space::circle();
  const auto k = ScalarKernel::circle_exp_cos(s);
  const auto phi = SymmetryMap::circle_rotation(rho, s);
  const auto C = build_unitary(k, phi);
  const MatrixKernel big = embed(C.as_matrix, ell, k);
  report.environment["conventions"] = {{"rho", rho}, {"ell", ell}};

  guarded(report, "embedded projections match", anchor::kDimensionEmbedding, [&] {
    const auto pairs = sample_probe_pairs(s, c.probes, stream(c, kProbePairs));
    double worst = 0.0;
    for (std::size_t i = 0; i < c.projections; ++i) {
      Rng rng(stream(c, kProjectionVectors, i));
      const ComplexVector small = random_vector(rng, 2);
      ComplexVector v = ComplexVector::Zero(ell);
      v.head(2) = small;
      const auto kv_big = project(big, v);
      const auto kv_small = project(C.as_matrix, small);
      for (const auto& [x, y] : pairs) {
        const Complex a = kv_big(x, y);
        const Complex b = kv_small(x, y);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
    }
    report.records.push_back(make_record("embedded projections match", anchor::kDimensionEmbedding, worst <= match_tol,
                                         {{"vectors", c.projections},
                                          {"probes", pairs.size()},
                                          {"max_relative_difference", worst},
                                          {"tol", match_tol}}));
  });

  guarded(report, "embedded kernel degenerate at witness", anchor::kDimensionEmbedding, [&] {
    const Point x = Point::angle(param_number(c, "witness_angle"));
    const std::vector<Point> pts{x, phi(x)};
    const auto G = gram(big, pts, c.tolerances.herm);
    const auto v = classify(G, c.tolerances.pd);
    ComplexVector w = ComplexVector::Zero(ell * 2);
    // Coordinate-major: (coordinate 0, point 0) and (coordinate 1, point 1).
    w(0) = 1.0;
    w(2 + 1) = -1.0;
    const double form = quadratic_form(G, w);
    const double resid = (G.matrix() * w).norm();
    const bool ok = v.kind == PDKind::PositiveSemidefiniteDegenerate && resid <= c.tolerances.resid * v.scale;
    report.records.push_back(make_record("embedded kernel degenerate at witness", anchor::kDimensionEmbedding, ok,
                                         {{"ell", ell},
                                          {"form_value", form},
                                          {"residual_norm", resid},
                                          {"verdict", verdict_evidence(v)}}));
  });

  guarded(report, "embedded kernel positive semidefinite", anchor::kDimensionEmbedding, [&] {
    std::size_t indefinite = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < c.point_sets; ++t) {
      const auto pts = sample_distinct(s, c.n_points, c.min_sep, stream(c, kPsdSets, t));
      const auto v = classify(gram(big, pts, c.tolerances.herm), c.tolerances.pd);
      indefinite += v.kind == PDKind::Indefinite;
      worst = std::min(worst, v.relative_min_eigenvalue());
    }
    report.records.push_back(make_record("embedded kernel positive semidefinite", anchor::kDimensionEmbedding,
                                         indefinite == 0,
                                         {{"point_sets", c.point_sets},
                                          {"indefinite", indefinite},
                                          {"worst_relative_min_eigenvalue", worst}}));
  });
}

// ---------------------------------------------------------------------------
// Negative controls. Everything here is an observation.
// ---------------------------------------------------------------------------

void suite_negative_controls(SuiteReport& report, const SuiteConfig& c) {
  guarded(report, "periodic map", anchor::kNonAperiodicControl, [&] {
    const Space s = Space::circle();
    const auto k = ScalarKernel::circle_exp_cos(s);
    const double angle = param_number(c, "periodic_angle");
    const auto phi = SymmetryMap::circle_rotation(angle, s);
    const auto C = build_unitary(k, phi);
    const Point x = Point::angle(param_number(c, "witness_angle"));
    const Point fx = phi(x);

    const auto ap = check_aperiodic(phi, {x}, c.m_max);
    report.records.push_back(observation("periodic map has a short orbit", anchor::kNonAperiodicControl,
                                         {{"period_found", ap.violation_found},
                                          {"period", ap.violation_found ? ap.violating_power : 0},
                                          {"returns_to_start", points_equal(s, phi(fx), x)},
                                          {"consistent", ap.violation_found}}));

    // Candidate projection vectors: the structured ones, then random ones.
    std::vector<ComplexVector> vs;
    vs.push_back((ComplexVector(2) << 1.0, 1.0).finished());
    vs.push_back((ComplexVector(2) << 1.0, -1.0).finished());
    vs.push_back((ComplexVector(2) << 1.0, 0.0).finished());
    vs.push_back((ComplexVector(2) << 0.0, 1.0).finished());
    Rng rng(stream(c, kControls));
    for (std::size_t i = 0; i < c.projections; ++i) vs.push_back(random_vector(rng, 2));

    const auto pts = point_set(s, c, c.n_points, {x, fx}, stream(c, kControls, 1));
    std::size_t degenerate = 0;
    Json seen = Json::array();
    for (const auto& v : vs) {
      const auto verdict = classify(gram(project(C.as_matrix, v), pts, c.tolerances.herm), c.tolerances.pd);
      const bool deg = verdict.kind != PDKind::PositiveDefinite;
      degenerate += deg;
      seen.push_back({{"vector", vector_json(v)}, {"verdict", verdict_evidence(verdict)}});
    }
    report.records.push_back(observation(
        "projection over a period-2 orbit", anchor::kNonAperiodicControl,
        {{"points", pts.size()},
         {"vectors", vs.size()},
         {"degenerate_projections", degenerate},
         {"consistent", degenerate > 0},
         {"projections", seen}},
        "projection strictness is not expected without aperiodicity; consistent means a degenerate projection was seen"));
  });

  guarded(report, "non-injective map", anchor::kNonAperiodicControl, [&] {
    const Space s = Space::euclidean(2);
    const auto k = ScalarKernel::gaussian(s, 1.0);
    const auto phi = SymmetryMap::scaling(s, 0.0);
    const auto C = build_unitary(k, phi);
    const auto pts = sample_distinct(s, c.n_points, c.min_sep, stream(c, kControls, 2), sampling(c));
    const bool injective = check_injective_on(phi, pts);
    const ComplexVector v = (ComplexVector(2) << 1.0, 0.0).finished();
    const auto verdict = classify(gram(project(C.as_matrix, v), pts, c.tolerances.herm), c.tolerances.pd);
    report.records.push_back(observation("projection under a collapsing map", anchor::kNonAperiodicControl,
                                         {{"injective", injective},
                                          {"points", pts.size()},
                                          {"vector", vector_json(v)},
                                          {"verdict", verdict_evidence(verdict)},
                                          {"consistent", !injective && verdict.kind != PDKind::PositiveDefinite}},
                                         "a collapsing map sends every point to one image, so one projection is constant"));
  });
}

// ---------------------------------------------------------------------------
// Catalog and configuration
// ---------------------------------------------------------------------------

struct SuiteEntry {
  SuiteInfo info;
  std::function<void(SuiteConfig&)> defaults;
  std::function<void(SuiteReport&, const SuiteConfig&)> run;
};

const std::vector<SuiteEntry>& entries() {
  static const std::vector<SuiteEntry> table = {
      {{"circle-example1", "circle kernel e^cos with a rotation: PSD, not strict, strict projections"},
       [](SuiteConfig& c) {
         c.n_points = 8;
         c.min_sep = 0.25;
         c.parameters = {{"rho", 1.0}, {"witness_angle", 0.0}, {"generators", 8}, {"include_witness", true},
                         {"invariance_tol", 1e-8}, {"degeneracy_tol", 1e-8}, {"angle_tol", 1e-6}, {"witness_tol", 1e-9}};
       },
       suite_circle},
      {{"gaussian-example1", "Gaussian kernel on R^m with a translation: PSD, not strict, strict projections"},
       [](SuiteConfig& c) {
         c.n_points = 8;
         c.min_sep = 0.1;
         c.parameters = {{"sigma", 1.0}, {"dim", 3}, {"z", {1.0, 0.0, 0.0}}, {"translations", 10},
                         {"include_witness", true}, {"invariance_tol", 1e-12}, {"degeneracy_tol", 1e-8},
                         {"angle_tol", 1e-6}, {"witness_tol", 1e-9}};
       },
       suite_gaussian},
      {{"dotproduct-example1", "shifted dot-product kernel with x -> r x: three-point witness, strict projections"},
       [](SuiteConfig& c) {
         c.n_points = 6;
         c.min_sep = 0.2;
         c.parameters = {{"r", 2.0}, {"dim", 2}, {"generators", 8}, {"shift_points_max", 10},
                         {"invariance_tol", 1e-8}, {"degeneracy_tol", 1e-8}, {"angle_tol", 1e-6}, {"witness_tol", 1e-9}};
       },
       suite_dotproduct},
      {{"orbit-decomposition", "index set F, map tau and m + 2p points against a direct recomputation"},
       [](SuiteConfig& c) {
         c.n_points = 10;
         c.instances = 200;
       },
       suite_orbit},
      {{"abelian-roundtrip", "analysis after synthesis recovers random spectra on finite abelian groups"},
       [](SuiteConfig& c) {
         c.n_points = 0;
         c.instances = 100;
         c.parameters = {{"groups", {{3, 4}}}, {"max_group_order", 24}, {"roundtrip_tol", 1e-10}};
       },
       suite_abelian_roundtrip},
      {{"abelian-strictness", "coefficient strictness criterion against full-group Gram matrices, l = 1, 2, 3"},
       [](SuiteConfig& c) {
         c.n_points = 0;
         c.instances = 60;
         c.parameters = {{"max_group_order", 24}, {"projection_trials", 4}};
       },
       suite_abelian_strictness},
      {{"embed-check", "circle counterexample grown to l = 3 with zero off-diagonal blocks"},
       [](SuiteConfig& c) {
         c.n_points = 8;
         c.projections = 30;
         c.point_sets = 10;
         c.parameters = {{"rho", 1.0}, {"ell", 3}, {"witness_angle", 0.0}, {"match_tol", 1e-12}};
       },
       suite_embed},
      {{"complex-sphere", "e^<x,y> on the unit sphere of C^q with the phase rotation e^{i theta} I"},
       [](SuiteConfig& c) {
         c.n_points = 6;
         c.min_sep = 0.3;
         c.parameters = {{"theta", 1.0}, {"dim", 2}, {"generators", 8}, {"include_witness", true},
                         {"invariance_tol", 1e-8}, {"degeneracy_tol", 1e-8}, {"angle_tol", 1e-6}, {"witness_tol", 1e-9}};
       },
       suite_complex_sphere},
      {{"negative-controls", "periodic and collapsing maps; degenerate projections recorded as observations"},
       [](SuiteConfig& c) {
         c.n_points = 6;
         c.projections = 8;
         c.min_sep = 0.2;
         c.parameters = {{"periodic_angle", std::numbers::pi}, {"witness_angle", 0.5}};
       },
       suite_negative_controls},
  };
  return table;
}

const SuiteEntry& find_entry(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return e;
  }
  config_error("suite", "unknown suite '" + std::string(id) + "'");
}

void validate(const SuiteConfig& c) {
  if (c.schema_version != io::kSchemaVersion) config_error("schema_version", "unsupported version " + std::to_string(c.schema_version));
  if (c.point_sets < 1) config_error("point_sets", "must be at least 1");
  if (c.projections < 1) config_error("projections", "must be at least 1");
  if (c.instances < 1) config_error("instances", "must be at least 1");
  if (c.probes < 1) config_error("probes", "must be at least 1");
  if (c.m_max < 1) config_error("m_max", "must be at least 1");
  if (!(c.min_sep > 0.0) || !std::isfinite(c.min_sep)) config_error("min_sep", "must be positive");
  if (!(c.radius > 0.0) || !std::isfinite(c.radius)) config_error("radius", "must be positive");
  const auto positive = [](double t, const char* f) {
    if (!(t > 0.0) || !std::isfinite(t)) config_error(std::string("tolerances.") + f, "must be positive");
  };
  positive(c.tolerances.pd, "pd");
  positive(c.tolerances.herm, "herm");
  positive(c.tolerances.resid, "resid");
  positive(c.tolerances.strict, "strict");
  positive(c.tolerances.synth, "synth");
}

template <class T>
void read_field(const Json& j, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw Error(Errc::ConfigError, "");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0) throw Error(Errc::ConfigError, "");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw Error(Errc::ConfigError, "");
    }
    out = it->get<T>();
  } catch (const std::exception&) {
    config_error(key, "unexpected value " + it->dump());
  }
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

SuiteConfig default_config(std::string_view suite) {
  const auto& e = find_entry(suite);
  SuiteConfig c;
  c.suite = e.info.id;
  e.defaults(c);
  return c;
}

SuiteConfig config_from_json(const Json& j, std::string_view suite) {
  if (!j.is_object()) config_error("config", "expected a JSON object");
  static const std::vector<std::string> known = {"schema_version", "suite",   "seed",     "n_points",
                                                 "min_sep",        "radius",  "point_sets", "projections",
                                                 "instances",      "tolerances", "m_max",  "probes",
                                                 "parameters"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) config_error(key, "unknown field");
  }
  std::string id(suite);
  if (const auto it = j.find("suite"); it != j.end()) {
    if (!it->is_string()) config_error("suite", "expected a string");
    if (!id.empty() && it->get<std::string>() != id) {
      config_error("suite", "config names '" + it->get<std::string>() + "' but '" + id + "' was requested");
    }
    id = it->get<std::string>();
  }
  SuiteConfig c = default_config(id);
  read_field(j, "schema_version", c.schema_version);
  read_field(j, "seed", c.seed);
  read_field(j, "n_points", c.n_points);
  read_field(j, "min_sep", c.min_sep);
  read_field(j, "radius", c.radius);
  read_field(j, "point_sets", c.point_sets);
  read_field(j, "projections", c.projections);
  read_field(j, "instances", c.instances);
  read_field(j, "m_max", c.m_max);
  read_field(j, "probes", c.probes);
  if (const auto it = j.find("tolerances"); it != j.end()) {
    if (!it->is_object()) config_error("tolerances", "expected an object");
    for (const auto& [key, _] : it->items()) {
      if (key != "pd" && key != "herm" && key != "resid" && key != "strict" && key != "synth") {
        config_error("tolerances." + key, "unknown field");
      }
    }
    read_field(*it, "pd", c.tolerances.pd);
    read_field(*it, "herm", c.tolerances.herm);
    read_field(*it, "resid", c.tolerances.resid);
    read_field(*it, "strict", c.tolerances.strict);
    read_field(*it, "synth", c.tolerances.synth);
  }
  if (const auto it = j.find("parameters"); it != j.end()) {
    if (!it->is_object()) config_error("parameters", "expected an object");
    for (const auto& [key, value] : it->items()) {
      if (!c.parameters.contains(key)) config_error("parameters." + key, "unknown parameter for suite " + id);
      c.parameters[key] = value;
    }
  }
  validate(c);
  return c;
}

Json to_json(const SuiteConfig& c) {
  return {{"schema_version", c.schema_version},
          {"suite", c.suite},
          {"seed", c.seed},
          {"n_points", c.n_points},
          {"min_sep", c.min_sep},
          {"radius", c.radius},
          {"point_sets", c.point_sets},
          {"projections", c.projections},
          {"instances", c.instances},
          {"tolerances",
           {{"pd", c.tolerances.pd},
            {"herm", c.tolerances.herm},
            {"resid", c.tolerances.resid},
            {"strict", c.tolerances.strict},
            {"synth", c.tolerances.synth}}},
          {"m_max", c.m_max},
          {"probes", c.probes},
          {"parameters", c.parameters}};
}

SuiteReport run_suite(const SuiteConfig& config) {
  validate(config);
  const auto& e = find_entry(config.suite);
  SuiteReport report;
  report.suite = config.suite;
  report.environment = to_json(config);
  report.environment["rng"] = "mt19937_64 with splitmix64 sub-seeds";
  e.run(report, config);
  return report;
}

}  // namespace pdproj
