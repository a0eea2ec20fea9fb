#include "serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace belgauge {
namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "field \"" + field + "\": " + msg);
}

std::size_t read_dim(const Json& doc, const char* key) {
  if (!doc.contains(key)) parse_fail(key, "missing");
  const Json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    parse_fail(key, "expected a positive integer, got " + v.dump());
  }
  return v.get<std::size_t>();
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols,
                               const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array of rows");
  if (j.size() != rows) {
    parse_fail(field, "expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(j.size()));
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols) {
      parse_fail(row_field, "expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = row[k];
      const std::string entry_field = row_field + "[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        parse_fail(entry_field, "expected [re, im], got " + e.dump());
      }
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        parse_fail(entry_field, "non-finite value");
      }
      m(i, k) = Complex(re, im);
    }
  }
  return m;
}

StateFile StateFile::parse(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("<root>", "expected a JSON object");
  StateFile f;
  f.shape.d1 = read_dim(doc, "d1");
  f.shape.d2 = read_dim(doc, "d2");
  if (!doc.contains("kind")) parse_fail("kind", "missing");
  const Json& kind = doc.at("kind");
  if (kind == "pure") {
    f.kind = StateKind::Pure;
  } else if (kind == "density") {
    f.kind = StateKind::Density;
  } else {
    parse_fail("kind", "expected \"pure\" or \"density\", got " + kind.dump());
  }
  if (!doc.contains("data")) parse_fail("data", "missing");
  if (f.kind == StateKind::Pure) {
    f.data = matrix_from_json(doc.at("data"), f.shape.d1, f.shape.d2, "data");
  } else {
    const std::size_t n = f.shape.total();
    f.data = matrix_from_json(doc.at("data"), n, n, "data");
  }
  return f;
}

StateFile StateFile::from_pure(const PureBipartiteState& psi) {
  return {StateKind::Pure, psi.shape(), psi.amplitudes()};
}

StateFile StateFile::from_density(const DensityOperator& rho) {
  return {StateKind::Density, rho.shape(), rho.matrix()};
}

Json StateFile::to_json() const {
  Json j;
  j["d1"] = shape.d1;
  j["d2"] = shape.d2;
  j["kind"] = kind == StateKind::Pure ? "pure" : "density";
  j["data"] = matrix_to_json(data);
  return j;
}

std::string StateFile::dump() const { return to_json().dump(); }

DensityOperator StateFile::density() const {
  if (kind == StateKind::Pure) {
    return pure_to_density(PureBipartiteState::from_amplitudes(data));
  }
  return DensityOperator::from_matrix(data, shape);
}

PureBipartiteState StateFile::pure() const {
  if (kind == StateKind::Pure) return PureBipartiteState::from_amplitudes(data);
  return density_to_pure(density());
}

bool StateFile::is_pure() const {
  return kind == StateKind::Pure || density().purity() >= 1.0 - kPurityTol;
}

Json optional_number(std::optional<double> v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

Json to_json(const NonlocalityReport& r) {
  Json j;
  if (r.settings) {
    j["settings"] = Json::array({r.settings->s1, r.settings->s2});
  } else {
    j["settings"] = "any";
  }
  Json bounds = Json::array();
  for (const LabeledBound& b : r.labeled()) {
    Json e;
    e["tag"] = b.tag;
    e["name"] = b.name;
    e["value"] = optional_number(b.value);
    e["in_bracket"] = b.in_bracket;
    bounds.push_back(std::move(e));
  }
  j["bounds"] = std::move(bounds);
  j["chsh_lower"] = optional_number(r.chsh_lower);
  j["bracket"] = Json::array({optional_number(r.lower), optional_number(r.upper)});
  j["bracket_valid"] = r.bracket_valid();
  return j;
}

Json to_json(const EntanglementReport& r) {
  Json j;
  j["negativity"] = r.negativity;
  j["concurrence"] = optional_number(r.concurrence);
  if (r.dim_factor) {
    j["dim_factor"] = *r.dim_factor;
  } else {
    j["dim_factor"] = "infinite";
  }
  j["rank"] = r.rank ? Json(*r.rank) : Json(nullptr);
  Json slacks = Json::object();
  for (const auto& s : r.slacks()) slacks[s.tag] = optional_number(s.value);
  j["slacks"] = std::move(slacks);
  j["relations_hold"] = r.relations_hold();
  return j;
}

Json to_json(const ChshResult& r, bool include_observables) {
  Json j;
  j["chsh_value"] = r.chsh_value;
  j["violation_ratio"] = r.violation_ratio;
  j["iterations"] = r.iterations;
  j["restart"] = r.restart;
  j["converged"] = r.converged;
  if (include_observables) {
    Json obs;
    obs["A1"] = matrix_to_json(r.a1);
    obs["A2"] = matrix_to_json(r.a2);
    obs["B1"] = matrix_to_json(r.b1);
    obs["B2"] = matrix_to_json(r.b2);
    j["observables"] = std::move(obs);
  }
  return j;
}

Json to_json(const DilationReport& r, double bound_eq26) {
  Json j;
  j["s1"] = r.s1;
  j["s2"] = r.s2;
  j["trials"] = r.trials;
  j["max_residual"] = r.max_residual;
  j["trace"] = r.trace;
  j["trace_norm"] = r.trace_norm;
  j["bound_eq26"] = bound_eq26;
  j["pass"] = r.pass;
  return j;
}

}  // namespace belgauge
