#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdproj/counterexample.hpp"
#include "pdproj/fourier.hpp"
#include "pdproj/kernels.hpp"
#include "pdproj/symmetry.hpp"

// JSON encodings shared by the CLI and the suite reports. Complex numbers are
// [re, im] pairs; readers also accept a bare number for a real value.
// Malformed input raises Error(Errc::ConfigError) naming the offending field.

namespace pdproj::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(Complex c);
Complex complex_from_json(const Json& j, std::string_view field = "value");

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, std::string_view field = "matrix");
Json to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j, std::string_view field = "vector");

/// {"kind": "circle" | "euclidean" | "complex_sphere" | "finite_abelian",
///  "dim": m, "moduli": [q...], "eq_tol": t}
Json to_json(const Space& s);
Space space_from_json(const Json& j);

/// Circle: number. Euclidean: array. Complex sphere: array of [re, im].
/// Finite group: integer array.
Json to_json(const Point& p);
Point point_from_json(const Json& j, const Space& s);

struct PointSet {
  Space space;
  std::vector<Point> points;
};
/// {"schema_version": 1, "space": {...}, "points": [...]}
Json to_json(const PointSet& ps);
PointSet point_set_from_json(const Json& j);

/// {"space": {...}, "action_kind": ..., "parameters": {...},
///  "adjoint": {"action_kind": ..., "parameters": {...}}?}
Json to_json(const SymmetryMap& m);
SymmetryMap map_from_json(const Json& j);
/// Same encoding, with the space supplied by the caller when absent.
SymmetryMap map_from_json(const Json& j, const Space& fallback);

/// {"space": {...}, "form": name, "parameters": {...}}
Json to_json(const ScalarKernel& k);
ScalarKernel kernel_from_json(const Json& j);

/// {"ell": l, "entries": [[kernel, ...], ...]}
Json to_json(const MatrixKernel& K);
MatrixKernel matrix_kernel_from_json(const Json& j);

/// {"variant": "unitary" | "adjoint" | "shifted_adjoint", "base": kernel,
///  "map": map, "origin": point?, "ell": l?, "filler": kernel?}
Json to_json(const CounterexampleKernel& C);
CounterexampleKernel counterexample_from_json(const Json& j);
/// Counterexample config, embedded to "ell" (with "filler") when present.
MatrixKernel counterexample_matrix_from_json(const Json& j);

/// Any of the three kernel encodings, as a matrix kernel (scalars are 1 x 1).
MatrixKernel any_kernel_from_json(const Json& j);

Json to_json(const OrbitDecomposition& d);

/// {"group": [q...], "coefficients": [...]} with numbers (scalar) or
/// l x l arrays of [re, im] (matrix), in lexicographic element order.
Json to_json(const FourierSpectrum& s);
FourierSpectrum spectrum_from_json(const Json& j);

Json to_json(const PDVerdict& v);
Json to_json(const HermitianMatrix& m);

/// Reads a JSON file; ConfigError on I/O or parse failure.
Json read_file(const std::string& path);

}  // namespace pdproj::io
