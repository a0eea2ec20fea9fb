#pragma once

// JSON and CSV encodings. Complex numbers are [re, im] pairs; reals use the
// shortest decimal form that round-trips to the same double.

#include <optional>
#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "chsh.hpp"
#include "entmeas.hpp"
#include "srcop.hpp"
#include "states.hpp"

namespace belgauge {

using Json = nlohmann::ordered_json;

enum class StateKind { Pure, Density };

/// Contents of a state file:
///   {"d1": 2, "d2": 2, "kind": "pure" | "density",
///    "data": [[[re, im], ...], ...]}   (row-major)
/// Pure data is d1 rows of d2 amplitudes; density data is d1*d2 square.
struct StateFile {
  StateKind kind = StateKind::Pure;
  BipartiteShape shape;
  ComplexMatrix data;

  /// Throws ParseError naming the offending field.
  static StateFile parse(const std::string& text);
  static StateFile from_pure(const PureBipartiteState& psi);
  static StateFile from_density(const DensityOperator& rho);
  Json to_json() const;
  std::string dump() const;

  /// Validated views; errors from the states module propagate.
  DensityOperator density() const;
  /// Pure input, or a density operator that is pure within tolerance.
  PureBipartiteState pure() const;
  bool is_pure() const;
};

Json matrix_to_json(const ComplexMatrix& m);
/// `field` names the JSON path in diagnostics.
ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols,
                               const std::string& field);

Json optional_number(std::optional<double> v);

Json to_json(const NonlocalityReport& r);
Json to_json(const EntanglementReport& r);
Json to_json(const ChshResult& r, bool include_observables = true);
Json to_json(const DilationReport& r, double bound_eq26);

/// Shortest round-trip decimal; "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double v);

}  // namespace belgauge
