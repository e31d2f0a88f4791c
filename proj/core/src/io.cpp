#include "pdproj/io.hpp"

#include <fstream>
#include <sstream>

#include "pdproj/error.hpp"

namespace pdproj::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(std::string_view field, const std::string& msg) {
  throw Error(Errc::ConfigError, std::string(field) + ": " + msg);
}

const Json& require(const Json& j, std::string_view key, std::string_view context) {
  if (!j.is_object()) fail(context, "expected an object");
  auto it = j.find(std::string(key));
  if (it == j.end()) fail(std::string(context) + "." + std::string(key), "missing field");
  return *it;
}

double number(const Json& j, std::string_view field) {
  if (!j.is_number()) fail(field, "expected a number, got " + j.dump());
  return j.get<double>();
}

int integer(const Json& j, std::string_view field) {
  if (!j.is_number_integer()) fail(field, "expected an integer, got " + j.dump());
  return j.get<int>();
}

std::vector<double> real_array(const Json& j, std::string_view field) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], std::string(field) + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> int_array(const Json& j, std::string_view field) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], std::string(field) + "[" + std::to_string(i) + "]"));
  return out;
}

// Library errors raised while decoding (bad dimensions, wrong kinds) are
// configuration problems from the caller's point of view. A spectrum with a
// negative or indefinite coefficient is well formed, so InvalidSpectrum passes.
template <class F>
auto decoding(std::string_view field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError || e.code() == Errc::InvalidSpectrum) throw;
    fail(field, e.what());
  }
}

Json action_parameters(const Action& a) {
  return std::visit(overloaded{
                        [](const action::Identity&) { return Json::object(); },
                        [](const action::CircleRotation& r) { return Json{{"angle", r.angle}}; },
                        [](const action::Translation& t) { return Json{{"shift", t.shift}}; },
                        [](const action::Scaling& s) { return Json{{"factor", s.factor}}; },
                        [](const action::PhaseRotation& r) { return Json{{"angle", r.angle}}; },
                        [](const action::Linear& l) { return Json{{"matrix", to_json(l.matrix)}}; },
                        [](const action::GroupTranslation& g) { return Json{{"shift", g.shift}}; },
                    },
                    a);
}

Action action_from_json(const Json& j, std::string_view context) {
  const Json& kind_j = require(j, "action_kind", context);
  if (!kind_j.is_string()) fail(std::string(context) + ".action_kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const Json params = j.contains("parameters") ? j.at("parameters") : Json::object();
  const std::string pctx = std::string(context) + ".parameters";
  if (kind == "identity") return action::Identity{};
  if (kind == "circle_rotation") return action::CircleRotation{number(require(params, "angle", pctx), pctx + ".angle")};
  if (kind == "euclidean_translation") return action::Translation{real_array(require(params, "shift", pctx), pctx + ".shift")};
  if (kind == "euclidean_scaling") return action::Scaling{number(require(params, "factor", pctx), pctx + ".factor")};
  if (kind == "complex_sphere_rotation") {
    return action::PhaseRotation{number(require(params, "angle", pctx), pctx + ".angle")};
  }
  if (kind == "linear_map") return action::Linear{matrix_from_json(require(params, "matrix", pctx), pctx + ".matrix")};
  if (kind == "group_translation") return action::GroupTranslation{int_array(require(params, "shift", pctx), pctx + ".shift")};
  fail(std::string(context) + ".action_kind", "unknown action kind '" + kind + "'");
}

}  // namespace

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j, std::string_view field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(field, "expected a number or [re, im], got " + j.dump());
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::string_view field) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail(field, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail(field, "ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                  std::string(field) + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

ComplexVector vector_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) fail(field, "expected an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], std::string(field) + "[" + std::to_string(i) + "]");
  }
  return v;
}

Json to_json(const Space& s) {
  Json j{{"kind", std::string(to_string(s.kind()))}};
  switch (s.kind()) {
    case SpaceKind::Circle: j["eq_tol"] = s.eq_tol(); break;
    case SpaceKind::Euclidean:
    case SpaceKind::ComplexSphere:
      j["dim"] = s.dim();
      j["eq_tol"] = s.eq_tol();
      break;
    case SpaceKind::FiniteAbelian: j["moduli"] = s.moduli(); break;
  }
  return j;
}

Space space_from_json(const Json& j) {
  const std::string ctx = "space";
  const Json& kind_j = require(j, "kind", ctx);
  if (!kind_j.is_string()) fail("space.kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const double eq_tol = j.contains("eq_tol") ? number(j.at("eq_tol"), "space.eq_tol") : Space::kDefaultEqTol;
  return decoding(ctx, [&] {
    if (kind == "circle") return Space::circle(eq_tol);
    if (kind == "euclidean") return Space::euclidean(integer(require(j, "dim", ctx), "space.dim"), eq_tol);
    if (kind == "complex_sphere") return Space::complex_sphere(integer(require(j, "dim", ctx), "space.dim"), eq_tol);
    if (kind == "finite_abelian") return Space::finite_abelian(int_array(require(j, "moduli", ctx), "space.moduli"));
    fail("space.kind", "unknown space kind '" + kind + "'");
  });
}

Json to_json(const Point& p) {
  switch (p.kind()) {
    case SpaceKind::Circle: return p.angle();
    case SpaceKind::Euclidean: return p.coords();
    case SpaceKind::ComplexSphere: {
      Json out = Json::array();
      for (const auto& c : p.complex_coords()) out.push_back(to_json(c));
      return out;
    }
    case SpaceKind::FiniteAbelian: return p.elems();
  }
  return nullptr;
}

Point point_from_json(const Json& j, const Space& s) {
  return decoding("point", [&] {
    Point p = [&] {
      switch (s.kind()) {
        case SpaceKind::Circle: return Point::angle(number(j, "point"));
        case SpaceKind::Euclidean: return Point::euclidean(real_array(j, "point"));
        case SpaceKind::ComplexSphere: {
          if (!j.is_array()) fail("point", "expected an array of [re, im]");
          std::vector<Complex> c;
          for (const auto& e : j) c.push_back(complex_from_json(e, "point"));
          return Point::complex_sphere(std::move(c), 1e-9);
        }
        case SpaceKind::FiniteAbelian: {
          const auto e = int_array(j, "point");
          for (std::size_t r = 0; r < e.size() && r < s.moduli().size(); ++r) {
            if (e[r] < 0 || e[r] >= s.moduli()[r]) fail("point", "group coordinate out of range: " + j.dump());
          }
          return Point::group(e, s);
        }
      }
      fail("point", "unsupported space");
    }();
    require_member(s, p, "point");
    return p;
  });
}

Json to_json(const PointSet& ps) {
  Json pts = Json::array();
  for (const auto& p : ps.points) pts.push_back(to_json(p));
  return {{"schema_version", kSchemaVersion}, {"space", to_json(ps.space)}, {"points", pts}};
}

PointSet point_set_from_json(const Json& j) {
  Space s = space_from_json(require(j, "space", "points_file"));
  const Json& pts = require(j, "points", "points_file");
  if (!pts.is_array()) fail("points_file.points", "expected an array");
  std::vector<Point> out;
  for (const auto& p : pts) out.push_back(point_from_json(p, s));
  return {std::move(s), std::move(out)};
}

Json to_json(const SymmetryMap& m) {
  Json j{{"space", to_json(m.space())},
         {"action_kind", std::string(action_kind(m.action()))},
         {"parameters", action_parameters(m.action())}};
  if (m.has_adjoint()) {
    const auto adj = m.adjoint();
    j["adjoint"] = {{"action_kind", std::string(action_kind(adj.action()))}, {"parameters", action_parameters(adj.action())}};
  }
  return j;
}

SymmetryMap map_from_json(const Json& j, const Space& fallback) {
  const Space s = j.contains("space") ? space_from_json(j.at("space")) : fallback;
  return decoding("map", [&] {
    SymmetryMap m = SymmetryMap::from_action(s, action_from_json(j, "map"));
    if (j.contains("adjoint")) {
      m = m.with_adjoint(SymmetryMap::from_action(s, action_from_json(j.at("adjoint"), "map.adjoint")));
    }
    return m;
  });
}

SymmetryMap map_from_json(const Json& j) {
  return map_from_json(j, space_from_json(require(j, "space", "map")));
}

Json to_json(const ScalarKernel& k) {
  const auto& node = k.node();
  Json params = std::visit(
      overloaded{
          [](const form::CircleExpCos&) { return Json::object(); },
          [](const form::Gaussian& g) { return Json{{"sigma", g.sigma}}; },
          [](const form::DotExp& d) { return Json{{"scale", d.scale}, {"shift", d.shift}}; },
          [](const form::TorusProduct&) { return Json::object(); },
          [](const form::GroupFourier& f) {
            Json c = Json::array();
            for (const auto& v : f.coefficients) c.push_back(to_json(v));
            return Json{{"coefficients", c}};
          },
          [](const form::Zero&) { return Json::object(); },
          [](const form::Composed& c) {
            return Json{{"base", to_json(c.base)},
                        {"left", c.left ? to_json(*c.left) : Json(nullptr)},
                        {"right", c.right ? to_json(*c.right) : Json(nullptr)}};
          },
          [](const form::Offset& o) { return Json{{"base", to_json(o.base)}, {"constant", o.constant}}; },
          [](const form::Combination& c) {
            Json terms = Json::array();
            for (const auto& [w, t] : c.terms) terms.push_back({{"weight", to_json(w)}, {"kernel", to_json(t)}});
            return Json{{"terms", terms}};
          },
      },
      node.form);
  return {{"space", to_json(node.space)}, {"form", std::string(form_name(node.form))}, {"parameters", params}};
}

ScalarKernel kernel_from_json(const Json& j) {
  const Space s = space_from_json(require(j, "space", "kernel"));
  const Json& form_j = require(j, "form", "kernel");
  if (!form_j.is_string()) fail("kernel.form", "expected a string");
  const std::string f = form_j.get<std::string>();
  const Json params = j.contains("parameters") ? j.at("parameters") : Json::object();
  const std::string ctx = "kernel.parameters";
  return decoding("kernel", [&] {
    if (f == "circle_exp_cos") return ScalarKernel::circle_exp_cos(s);
    if (f == "gaussian") return ScalarKernel::gaussian(s, number(require(params, "sigma", ctx), ctx + ".sigma"));
    if (f == "dot_exp") {
      const double scale = params.contains("scale") ? number(params.at("scale"), ctx + ".scale") : 1.0;
      const double shift = params.contains("shift") ? number(params.at("shift"), ctx + ".shift") : 0.0;
      return ScalarKernel::dot_exp(s, scale, shift);
    }
    if (f == "torus_product") return ScalarKernel::torus_product(s);
    if (f == "group_fourier") {
      const Json& c = require(params, "coefficients", ctx);
      if (!c.is_array()) fail(ctx + ".coefficients", "expected an array");
      std::vector<Complex> coeffs;
      for (const auto& v : c) coeffs.push_back(complex_from_json(v, ctx + ".coefficients"));
      return ScalarKernel::group_fourier(s, std::move(coeffs));
    }
    if (f == "zero") return ScalarKernel::zero(s);
    if (f == "composed") {
      const auto side = [&](const char* key) -> std::optional<SymmetryMap> {
        if (!params.contains(key) || params.at(key).is_null()) return std::nullopt;
        return map_from_json(params.at(key), s);
      };
      return ScalarKernel::composed(kernel_from_json(require(params, "base", ctx)), side("left"), side("right"));
    }
    if (f == "offset") {
      return ScalarKernel::offset(kernel_from_json(require(params, "base", ctx)),
                                  number(require(params, "constant", ctx), ctx + ".constant"));
    }
    if (f == "combination") {
      const Json& terms = require(params, "terms", ctx);
      if (!terms.is_array()) fail(ctx + ".terms", "expected an array");
      std::vector<std::pair<Complex, ScalarKernel>> out;
      for (const auto& t : terms) {
        out.emplace_back(complex_from_json(require(t, "weight", ctx + ".terms"), ctx + ".terms.weight"),
                         kernel_from_json(require(t, "kernel", ctx + ".terms")));
      }
      return ScalarKernel::combination(std::move(out));
    }
    fail("kernel.form", "unknown kernel form '" + f + "'");
  });
}

Json to_json(const MatrixKernel& K) {
  Json grid = Json::array();
  for (int i = 0; i < K.ell(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < K.ell(); ++j) row.push_back(to_json(K.entry(i, j)));
    grid.push_back(std::move(row));
  }
  return {{"ell", K.ell()}, {"entries", grid}};
}

MatrixKernel matrix_kernel_from_json(const Json& j) {
  const int ell = integer(require(j, "ell", "matrix_kernel"), "matrix_kernel.ell");
  const Json& grid = require(j, "entries", "matrix_kernel");
  if (!grid.is_array() || grid.size() != static_cast<std::size_t>(std::max(ell, 0))) {
    fail("matrix_kernel.entries", "expected " + std::to_string(ell) + " rows");
  }
  std::vector<ScalarKernel> entries;
  for (const auto& row : grid) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(ell)) {
      fail("matrix_kernel.entries", "expected " + std::to_string(ell) + " entries per row");
    }
    for (const auto& e : row) entries.push_back(kernel_from_json(e));
  }
  return decoding("matrix_kernel", [&] { return MatrixKernel(ell, std::move(entries)); });
}

Json to_json(const CounterexampleKernel& C) {
  Json j{{"variant", std::string(to_string(C.variant))}, {"base", to_json(C.base)}, {"map", to_json(C.map)}};
  if (C.origin) j["origin"] = to_json(*C.origin);
  return j;
}

CounterexampleKernel counterexample_from_json(const Json& j) {
  const Json& v = require(j, "variant", "counterexample");
  if (!v.is_string()) fail("counterexample.variant", "expected a string");
  const std::string variant = v.get<std::string>();
  const ScalarKernel base = kernel_from_json(require(j, "base", "counterexample"));
  const SymmetryMap map = map_from_json(require(j, "map", "counterexample"), base.space());
  return decoding("counterexample", [&] {
    if (variant == "unitary") return build_unitary(base, map);
    if (variant == "adjoint") return build_adjoint(base, map);
    if (variant == "shifted_adjoint") {
      return build_shifted(base, map, point_from_json(require(j, "origin", "counterexample"), base.space()));
    }
    fail("counterexample.variant", "unknown variant '" + variant + "'");
  });
}

MatrixKernel counterexample_matrix_from_json(const Json& j) {
  const auto C = counterexample_from_json(j);
  if (!j.contains("ell")) return C.as_matrix;
  const int ell = integer(j.at("ell"), "counterexample.ell");
  const ScalarKernel filler = j.contains("filler") ? kernel_from_json(j.at("filler")) : C.base;
  return decoding("counterexample", [&] { return embed(C.as_matrix, ell, filler); });
}

MatrixKernel any_kernel_from_json(const Json& j) {
  if (!j.is_object()) fail("kernel", "expected an object");
  if (j.contains("variant")) return counterexample_matrix_from_json(j);
  if (j.contains("entries")) return matrix_kernel_from_json(j);
  return MatrixKernel::from_scalar(kernel_from_json(j));
}

Json to_json(const OrbitDecomposition& d) {
  Json tau = Json::array();
  for (std::size_t mu : d.F) tau.push_back({mu, *d.tau[mu]});
  const auto block = [&](std::size_t begin, std::size_t end) {
    Json b = Json::array();
    for (std::size_t i = begin; i < end; ++i) b.push_back({{"point", to_json(d.z_points[i])}, {"source", d.z_source[i]}});
    return b;
  };
  Json z = Json::array();
  for (const auto& p : d.z_points) z.push_back(to_json(p));
  return {{"schema_version", kSchemaVersion},
          {"n", d.n()},
          {"m", d.m},
          {"p", d.p},
          {"F", d.F},
          {"tau", tau},
          {"blocks",
           {{"image_of_F", block(0, d.m)},
            {"image_of_complement", block(d.m, d.m + d.p)},
            {"not_in_tau_F", block(d.m + d.p, d.m + 2 * d.p)}}},
          {"z_points", z}};
}

Json to_json(const FourierSpectrum& s) {
  Json c = Json::array();
  if (s.is_matrix()) {
    for (const auto& a : s.matrix_coefficients()) c.push_back(to_json(a));
  } else {
    for (double a : s.scalar_coefficients()) c.push_back(a);
  }
  return {{"schema_version", kSchemaVersion}, {"group", s.group().moduli()}, {"coefficients", c}};
}

FourierSpectrum spectrum_from_json(const Json& j) {
  const auto moduli = int_array(require(j, "group", "spectrum"), "spectrum.group");
  const Space g = decoding("spectrum.group", [&] { return Space::finite_abelian(moduli); });
  const Json& c = require(j, "coefficients", "spectrum");
  if (!c.is_array() || c.empty()) fail("spectrum.coefficients", "expected a non-empty array");
  return decoding("spectrum", [&] {
    if (c[0].is_array() && !c[0].empty() && c[0][0].is_array()) {
      std::vector<ComplexMatrix> a;
      for (std::size_t i = 0; i < c.size(); ++i) {
        a.push_back(matrix_from_json(c[i], "spectrum.coefficients[" + std::to_string(i) + "]"));
      }
      return FourierSpectrum::matrix(g, std::move(a));
    }
    std::vector<double> a;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Complex v = complex_from_json(c[i], "spectrum.coefficients[" + std::to_string(i) + "]");
      if (v.imag() != 0.0) fail("spectrum.coefficients", "scalar coefficients must be real");
      a.push_back(v.real());
    }
    return FourierSpectrum::scalar(g, std::move(a));
  });
}

Json to_json(const PDVerdict& v) {
  Json nulls = Json::array();
  for (const auto& n : v.null_vectors) nulls.push_back(to_json(n));
  return {{"kind", std::string(to_string(v.kind))},
          {"min_eigenvalue", v.min_eigenvalue},
          {"numeric_rank", v.numeric_rank},
          {"scale", v.scale},
          {"eigenvalues", std::vector<double>(v.eigenvalues.data(), v.eigenvalues.data() + v.eigenvalues.size())},
          {"null_vectors", nulls}};
}

Json to_json(const HermitianMatrix& m) { return to_json(m.matrix()); }

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ConfigError, path + ": " + e.what());
  }
}

}  // namespace pdproj::io
