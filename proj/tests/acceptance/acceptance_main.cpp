// Acceptance criteria AC1-AC8. One line per criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "pdproj/counterexample.hpp"
#include "pdproj/random.hpp"
#include "pdproj/report.hpp"
#include "pdproj/suites.hpp"

using namespace pdproj;

namespace {

constexpr std::uint64_t kSeed = 20261016;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

ComplexVector random_vector(Rng& rng, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

ComplexVector vec2(double a, double b) { return (ComplexVector(2) << a, b).finished(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

void require_suite(Outcome& o, const std::string& id) {
  const auto r = run_suite(default_config(id));
  o.require(r.passed(), id + " suite: " + std::to_string(r.failures()) + " failed records");
}

// Degenerate blocked Gram at the witness points, with the analytic null
// direction matching the computed one.
void check_witness(Outcome& o, const CounterexampleKernel& C, const Point& x, double resid_tol) {
  const auto w = witness(C, x);
  const auto G = gram(C.as_matrix, w.points);
  const auto v = classify(G);
  const auto eig = decompose(G);
  const double rel_min = std::abs(v.relative_min_eigenvalue());
  o.require(v.kind == PDKind::PositiveSemidefiniteDegenerate, "witness Gram not degenerate");
  o.require(rel_min <= 1e-8, "min eigenvalue " + fmt(rel_min) + " relative");
  const ComplexVector c = w.flattened();
  std::vector<ComplexVector> null = v.null_vectors;
  if (null.empty()) null.push_back(eig.vectors.col(0));
  const double angle = angle_to_span(c, null);
  o.require(angle <= 1e-6, "null direction off by " + fmt(angle) + " rad");
  const double resid = (G.matrix() * c).norm() / v.scale;
  o.require(resid <= resid_tol, "witness residual " + fmt(resid) + " relative");
  o.detail += o.detail.empty() ? "" : "; ";
  o.detail += "min_eig/scale=" + fmt(rel_min) + " angle=" + fmt(angle);
}

// projections x sets, every projection Gram strictly positive definite.
void check_projections(Outcome& o, const MatrixKernel& K, const std::vector<std::vector<Point>>& sets,
                       std::size_t projections, Rng& rng) {
  std::size_t failures = 0;
  double worst = 1.0;
  for (std::size_t j = 0; j < projections; ++j) {
    const auto kv = project(K, random_vector(rng, K.ell()));
    for (const auto& pts : sets) {
      const auto v = classify(gram(kv, pts));
      failures += v.kind != PDKind::PositiveDefinite;
      worst = std::min(worst, v.relative_min_eigenvalue());
    }
  }
  o.require(failures == 0, std::to_string(failures) + " projection Grams not strictly positive definite");
  o.detail += (o.detail.empty() ? "" : "; ") + ("worst projection min_eig/scale=" + fmt(worst));
}

Outcome ac1() {
  Outcome o;
  const Space s = Space::circle();
  const auto C = build_unitary(ScalarKernel::circle_exp_cos(s), SymmetryMap::circle_rotation(1.0, s));
  check_witness(o, C, Point::angle(0.0), 1e-9);
  Rng rng(derive_seed(kSeed, 1));
  std::vector<std::vector<Point>> sets;
  for (int i = 0; i < 20; ++i) sets.push_back(sample_distinct(s, 8, 0.25, rng.next_u64()));
  check_projections(o, C.as_matrix, sets, 50, rng);
  require_suite(o, "circle-example1");
  return o;
}

Outcome ac2() {
  Outcome o;
  const Space s = Space::euclidean(3);
  const auto k = ScalarKernel::gaussian(s, 1.0);
  const auto C = build_unitary(k, SymmetryMap::translation(s, {1.0, 0.0, 0.0}));
  check_witness(o, C, Point::euclidean({0.0, 0.0, 0.0}), 1e-9);
  Rng rng(derive_seed(kSeed, 2));
  std::vector<SymmetryMap> translations;
  for (int i = 0; i < 10; ++i) {
    translations.push_back(SymmetryMap::translation(s, {rng.normal(), rng.normal(), rng.normal()}));
  }
  const auto pairs = sample_probe_pairs(s, 64, rng.next_u64());
  const auto inv_k = check_unitary_invariance(k, translations, pairs, 1e-12);
  const auto inv_c = check_unitary_invariance(C.as_matrix, translations, pairs, 1e-12);
  o.require(inv_k.passed && inv_c.passed, "translation invariance residual " +
                                              fmt(std::max(inv_k.relative_residual(), inv_c.relative_residual())));
  SamplingOptions opt;
  std::vector<std::vector<Point>> sets;
  for (int i = 0; i < 20; ++i) sets.push_back(sample_distinct(s, 8, 0.1, rng.next_u64(), opt));
  check_projections(o, C.as_matrix, sets, 50, rng);
  require_suite(o, "gaussian-example1");
  return o;
}

Outcome ac3() {
  Outcome o;
  const Space s = Space::euclidean(2);
  const Point origin = Point::euclidean({0.0, 0.0});
  const auto C = build_shifted(ScalarKernel::dot_exp(s), SymmetryMap::scaling(s, 2.0).self_adjoint(), origin);
  const auto w = witness(C, Point::euclidean({1.0, 0.0}));
  const auto G = gram(C.as_matrix, w.points);
  const auto v = classify(G);
  const double resid = (G.matrix() * w.flattened()).norm() / v.scale;
  o.require(G.dim() == 6, "blocked Gram is not 6 x 6");
  o.require(resid <= 1e-9, "witness residual " + fmt(resid) + " relative");
  o.require(v.kind == PDKind::PositiveSemidefiniteDegenerate, "witness Gram not degenerate");
  o.detail = "residual/scale=" + fmt(resid);
  Rng rng(derive_seed(kSeed, 3));
  SamplingOptions opt;
  opt.avoid = {origin};
  std::vector<std::vector<Point>> sets;
  for (int i = 0; i < 20; ++i) {
    auto pts = sample_distinct(s, 5, 0.2, rng.next_u64(), opt);
    pts.insert(pts.begin(), origin);
    sets.push_back(std::move(pts));
  }
  check_projections(o, C.as_matrix, sets, 50, rng);
  require_suite(o, "dotproduct-example1");
  return o;
}

Outcome ac4() {
  Outcome o;
  const auto r = run_suite(default_config("orbit-decomposition"));
  for (const auto& rec : r.records) {
    if (rec.name == "orbit decomposition matches oracle") {
      o.require(rec.evidence["instances"] == 200, "expected 200 instances");
      o.require(rec.evidence["mismatches"] == 0 && rec.evidence["errors"] == 0,
                "mismatches=" + rec.evidence["mismatches"].dump());
      o.detail = "instances=200 mismatches=" + rec.evidence["mismatches"].dump() +
                 " total_F=" + rec.evidence["total_F"].dump();
    }
  }
  o.require(r.passed(), "orbit suite failed");
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto rt = run_suite(default_config("abelian-roundtrip"));
  double worst = 0.0;
  std::size_t spectra = 0;
  for (const auto& rec : rt.records) {
    if (rec.anchor != anchor::kAbelianFourier) continue;
    ++spectra;
    o.require(rec.evidence["order"].get<int>() <= 24, "group larger than 24");
    worst = std::max(worst, rec.evidence["residual"].get<double>());
  }
  o.require(spectra == 100, "expected 100 spectra, got " + std::to_string(spectra));
  o.require(rt.passed() && worst < 1e-10, "roundtrip residual " + fmt(worst));

  const auto st = run_suite(default_config("abelian-strictness"));
  bool seen[4] = {false, false, false, false};
  for (const auto& rec : st.records) {
    if (rec.anchor == anchor::kAbelianStrictness) seen[rec.evidence["ell"].get<int>()] = true;
  }
  o.require(seen[1] && seen[2] && seen[3], "criterion not exercised for every ell in 1..3");
  o.require(st.passed(), "criterion disagrees with brute force in " + std::to_string(st.failures()) + " records");
  o.detail = "roundtrip max residual=" + fmt(worst) + " strictness records=" + std::to_string(st.records.size());
  return o;
}

Outcome ac6() {
  Outcome o;
  const Space s = Space::circle();
  const auto k = ScalarKernel::circle_exp_cos(s);
  const auto C = build_unitary(k, SymmetryMap::circle_rotation(1.0, s));
  const auto E = embed(C.as_matrix, 3, k);
  Rng rng(derive_seed(kSeed, 6));
  const auto pairs = sample_probe_pairs(s, 32, rng.next_u64());
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const ComplexVector small = random_vector(rng, 2);
    ComplexVector v = ComplexVector::Zero(3);
    v.head(2) = small;
    const auto a = project(E, v);
    const auto b = project(C.as_matrix, small);
    for (const auto& [x, y] : pairs) worst = std::max(worst, std::abs(a(x, y) - b(x, y)) / std::max(1.0, std::abs(b(x, y))));
  }
  o.require(worst <= 1e-12, "embedded projections differ by " + fmt(worst));
  const Point x = Point::angle(0.0);
  const auto G = gram(E, {x, Point::angle(1.0)});
  ComplexVector w = ComplexVector::Zero(6);
  w(0) = 1.0;
  w(3) = -1.0;
  const auto v = classify(G);
  o.require(v.kind == PDKind::PositiveSemidefiniteDegenerate, "embedded Gram not degenerate at witness");
  o.require((G.matrix() * w).norm() <= 1e-9 * v.scale, "embedded witness residual");
  o.detail = "max difference=" + fmt(worst) + " witness min_eig/scale=" + fmt(v.relative_min_eigenvalue());
  require_suite(o, "embed-check");
  return o;
}

Outcome ac7() {
  Outcome o;
  const Space s = Space::euclidean(2);
  const Point origin = Point::euclidean({0.0, 0.0});
  const auto base = ScalarKernel::dot_exp(s);
  const auto k = ScalarKernel::offset(base, -base(origin, origin).real());
  Rng rng(derive_seed(kSeed, 7));
  SamplingOptions opt;
  opt.avoid = {origin};
  std::size_t failures = 0;
  double worst = 1.0;
  for (int i = 0; i < 20; ++i) {
    const auto pts = sample_distinct(s, 1 + rng.below(10), 0.2, rng.next_u64(), opt);
    const auto v = classify(gram(k, pts));
    failures += v.kind != PDKind::PositiveDefinite;
    worst = std::min(worst, v.relative_min_eigenvalue());
  }
  o.require(failures == 0, std::to_string(failures) + " Grams not strictly positive definite");
  o.detail = "worst min_eig/scale=" + fmt(worst);
  return o;
}

Outcome ac8() {
  Outcome o;
  const Space s = Space::circle();
  const auto C = build_unitary(ScalarKernel::circle_exp_cos(s), SymmetryMap::circle_rotation(std::numbers::pi, s));
  const Point x = Point::angle(0.5);
  SamplingOptions opt;
  opt.avoid = {x, C.map(x)};
  auto pts = sample_distinct(s, 4, 0.2, derive_seed(kSeed, 8), opt);
  pts.push_back(x);
  pts.push_back(C.map(x));
  std::size_t degenerate = 0;
  for (const auto& v : {vec2(1, 1), vec2(1, -1), vec2(1, 0), vec2(0, 1)}) {
    degenerate += classify(gram(project(C.as_matrix, v), pts)).kind != PDKind::PositiveDefinite;
  }
  o.require(degenerate > 0, "no degenerate projection over the period-2 orbit");
  o.detail = "observation: " + std::to_string(degenerate) + " of 4 projections degenerate";
  const auto r = run_suite(default_config("negative-controls"));
  for (const auto& rec : r.records) {
    o.require(rec.observation && rec.evidence.value("consistent", false), "control '" + rec.name + "' inconsistent");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* what;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "circle counterexample", 2.0, ac1},
      {"AC2", "Gaussian counterexample", 2.0, ac2},
      {"AC3", "shifted dot-product counterexample", 2.0, ac3},
      {"AC4", "orbit decomposition vs oracle", 1.0, ac4},
      {"AC5", "abelian Fourier roundtrip and criterion", 5.0, ac5},
      {"AC6", "embedding to ell = 3", 1.0, ac6},
      {"AC7", "shifted kernel strict off the origin", 1.0, ac7},
      {"AC8", "period-2 control (observation)", 1.0, ac8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.require(false, "took " + fmt(secs) + " s, budget " + fmt(c.budget_s) + " s");
    failed += !o.ok;
    std::printf("[%s] %s %s (%.3f s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.what, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
