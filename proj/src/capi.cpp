#include "belgauge/belgauge.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "analysis.hpp"
#include "error.hpp"
#include "selftest.hpp"

struct bg_state {
  belgauge::StateFile file;
};

struct bg_config {
  belgauge::AnalyzeOptions analyze;
  std::size_t trials = 100;
  std::size_t dilation_cap = belgauge::kDefaultDilationCap;
};

namespace {

thread_local std::string g_last_error;

bg_status to_status(belgauge::ErrorCode code) {
  using belgauge::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return BG_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotSquare: return BG_ERR_NOT_SQUARE;
    case ErrorCode::NotHermitian: return BG_ERR_NOT_HERMITIAN;
    case ErrorCode::ShapeMismatch: return BG_ERR_SHAPE_MISMATCH;
    case ErrorCode::NotNormalized: return BG_ERR_NOT_NORMALIZED;
    case ErrorCode::InvalidState: return BG_ERR_INVALID_STATE;
    case ErrorCode::NotPure: return BG_ERR_NOT_PURE;
    case ErrorCode::IndexOutOfRange: return BG_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::DimensionCap: return BG_ERR_DIMENSION_CAP;
    case ErrorCode::SettingsTooSmall: return BG_ERR_SETTINGS_TOO_SMALL;
    case ErrorCode::DimensionTooSmall: return BG_ERR_DIMENSION_TOO_SMALL;
    case ErrorCode::RankTooSmall: return BG_ERR_RANK_TOO_SMALL;
    case ErrorCode::InvalidLowerBound: return BG_ERR_INVALID_LOWER_BOUND;
    case ErrorCode::CutoffTooSmall: return BG_ERR_CUTOFF_TOO_SMALL;
    case ErrorCode::NotTwoQubit: return BG_ERR_NOT_TWO_QUBIT;
    case ErrorCode::ParseError: return BG_ERR_PARSE;
  }
  return BG_ERR_INTERNAL;
}

bg_status fail(bg_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
bg_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return BG_OK;
  } catch (const belgauge::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BG_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(bool cond, const char* what) {
  if (!cond) throw belgauge::Error(belgauge::ErrorCode::InvalidArgument, what);
}

}  // namespace

extern "C" {

const char* bg_version(void) { return "1.0.0"; }

const char* bg_status_name(bg_status status) {
  switch (status) {
    case BG_OK: return "OK";
    case BG_ERR_PARSE: return "ParseError";
    case BG_ERR_IO: return "IOError";
    case BG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case BG_ERR_NOT_SQUARE: return "NotSquare";
    case BG_ERR_NOT_HERMITIAN: return "NotHermitian";
    case BG_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
    case BG_ERR_NOT_NORMALIZED: return "NotNormalized";
    case BG_ERR_INVALID_STATE: return "InvalidState";
    case BG_ERR_NOT_PURE: return "NotPure";
    case BG_ERR_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case BG_ERR_DIMENSION_CAP: return "DimensionCap";
    case BG_ERR_SETTINGS_TOO_SMALL: return "SettingsTooSmall";
    case BG_ERR_DIMENSION_TOO_SMALL: return "DimensionTooSmall";
    case BG_ERR_RANK_TOO_SMALL: return "RankTooSmall";
    case BG_ERR_INVALID_LOWER_BOUND: return "InvalidLowerBound";
    case BG_ERR_CUTOFF_TOO_SMALL: return "CutoffTooSmall";
    case BG_ERR_NOT_TWO_QUBIT: return "NotTwoQubit";
    case BG_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* bg_last_error(void) { return g_last_error.c_str(); }

void bg_string_free(char* s) { std::free(s); }

bg_status bg_config_create(bg_config** out) {
  if (!out) return fail(BG_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = new bg_config(); });
}

void bg_config_destroy(bg_config* config) { delete config; }

bg_status bg_config_set_seed(bg_config* config, uint64_t seed) {
  if (!config) return fail(BG_ERR_INVALID_ARGUMENT, "null config");
  config->analyze.seed = seed;
  return BG_OK;
}

bg_status bg_config_set_settings(bg_config* config, size_t s1, size_t s2) {
  if (!config) return fail(BG_ERR_INVALID_ARGUMENT, "null config");
  if (s1 == 0 && s2 == 0) {
    config->analyze.settings.reset();
    return BG_OK;
  }
  if (s1 < 2 || s2 < 2) {
    return fail(BG_ERR_SETTINGS_TOO_SMALL, "setting counts must both be >= 2");
  }
  config->analyze.settings = belgauge::SettingCounts{s1, s2};
  return BG_OK;
}

bg_status bg_config_set_tolerance(bg_config* config, const char* name, double value) {
  if (!config || !name) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { config->analyze.tol.set(name, value); });
}

bg_status bg_config_set_dilation_cap(bg_config* config, size_t cap) {
  if (!config || cap == 0) return fail(BG_ERR_INVALID_ARGUMENT, "cap must be positive");
  config->dilation_cap = cap;
  return BG_OK;
}

bg_status bg_config_set_trials(bg_config* config, size_t trials) {
  if (!config || trials == 0) return fail(BG_ERR_INVALID_ARGUMENT, "trials must be positive");
  config->trials = trials;
  return BG_OK;
}

bg_status bg_state_parse(const char* json, bg_state** out) {
  if (!json || !out) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new bg_state{belgauge::StateFile::parse(json)}; });
}

bg_status bg_state_load(const char* path, bg_state** out) {
  if (!path || !out) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(BG_ERR_IO, std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return bg_state_parse(buf.str().c_str(), out);
}

bg_status bg_state_from_amplitudes(size_t d1, size_t d2, const double* re_im,
                                   bg_state** out) {
  if (!re_im || !out) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    require(d1 >= 1 && d2 >= 1, "dimensions must be positive");
    belgauge::ComplexMatrix m(d1, d2);
    for (size_t i = 0; i < d1; ++i)
      for (size_t j = 0; j < d2; ++j) {
        const size_t k = 2 * (i * d2 + j);
        m(i, j) = belgauge::Complex(re_im[k], re_im[k + 1]);
      }
    const auto psi = belgauge::PureBipartiteState::from_amplitudes(m);
    *out = new bg_state{belgauge::StateFile::from_pure(psi)};
  });
}

void bg_state_destroy(bg_state* state) { delete state; }

bg_status bg_state_dims(const bg_state* state, size_t* d1, size_t* d2) {
  if (!state) return fail(BG_ERR_INVALID_ARGUMENT, "null state");
  if (d1) *d1 = state->file.shape.d1;
  if (d2) *d2 = state->file.shape.d2;
  return BG_OK;
}

bg_status bg_state_to_json(const bg_state* state, char** out_json) {
  if (!state || !out_json) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_json = copy_string(state->file.dump()); });
}

bg_status bg_schmidt_coefficients(const bg_state* state, double* out, size_t capacity,
                                  size_t* rank) {
  if (!state) return fail(BG_ERR_INVALID_ARGUMENT, "null state");
  if (capacity > 0 && !out) return fail(BG_ERR_INVALID_ARGUMENT, "null output buffer");
  return guarded([&] {
    const auto spec = belgauge::schmidt_decompose(state->file.pure());
    for (size_t k = 0; k < capacity && k < spec.coefficients.size(); ++k)
      out[k] = spec.coefficients[k];
    if (rank) *rank = spec.rank;
  });
}

bg_status bg_analyze(const bg_state* state, const bg_config* config, char** out_json,
                     int* out_ok) {
  if (!state || !config || !out_json) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto result = belgauge::analyze(state->file, config->analyze);
    *out_json = copy_string(result.to_json().dump(2));
    if (out_ok) *out_ok = result.ok ? 1 : 0;
  });
}

bg_status bg_source_op(const bg_state* state, const bg_config* config, int dilate_left,
                       size_t s, char** out_json, int* out_pass) {
  if (!state || !config || !out_json) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto site = dilate_left ? belgauge::DilatedSite::Left : belgauge::DilatedSite::Right;
    const auto result =
        belgauge::run_source_op(state->file.pure(), site, s, config->trials,
                                config->analyze.seed, config->analyze.tol,
                                config->dilation_cap);
    *out_json = copy_string(result.to_json().dump(2));
    if (out_pass) *out_pass = result.pass ? 1 : 0;
  });
}

bg_status bg_chsh(const bg_state* state, const bg_config* config, char** out_json) {
  if (!state || !config || !out_json) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    belgauge::SeesawOptions opts;
    opts.seed = config->analyze.seed;
    const auto result = belgauge::seesaw_chsh(state->file.density(), opts);
    *out_json = copy_string(belgauge::to_json(result).dump(2));
  });
}

bg_status bg_coherent_scan(const double* alphas, size_t count, int family,
                           size_t fock_cutoff, const bg_config* config,
                           bg_line_callback on_line, void* user_data, char** out_csv,
                           int* out_ok) {
  if ((!alphas && count > 0) || !config) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  if (!on_line && !out_csv) return fail(BG_ERR_INVALID_ARGUMENT, "no output requested");
  return guarded([&] {
    std::string text;
    auto emit = [&](const std::string& line) {
      if (on_line) on_line(line.c_str(), user_data);
      if (out_csv) text += line + "\n";
    };
    emit(belgauge::kScanHeader);
    const auto rows = belgauge::coherent_scan(
        std::vector<double>(alphas, alphas + count), family, fock_cutoff,
        config->analyze.seed, config->analyze.tol,
        [&](const belgauge::ScanRow& row) { emit(belgauge::format_scan_row(row)); });
    bool ok = true;
    for (const auto& row : rows) ok = ok && row.ok;
    if (out_csv) *out_csv = copy_string(text);
    if (out_ok) *out_ok = ok ? 1 : 0;
  });
}

bg_status bg_selftest(const bg_config* config, int as_json, char** out_report,
                      int* out_all_pass) {
  if (!config || !out_report) return fail(BG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto report = belgauge::run_selftest(config->analyze.seed, config->analyze.tol);
    *out_report = copy_string(as_json ? report.to_json().dump(2) + "\n" : report.text());
    if (out_all_pass) *out_all_pass = report.all_pass() ? 1 : 0;
  });
}

bg_status bg_coherent_bound(double alpha, double* out) {
  if (!out) return fail(BG_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = belgauge::prop2_bound(alpha); });
}

bg_status bg_linspace(double start, double stop, size_t count, double* out) {
  if (!out) return fail(BG_ERR_INVALID_ARGUMENT, "null output buffer");
  return guarded([&] {
    const auto grid = belgauge::linspace(start, stop, count);
    std::copy(grid.begin(), grid.end(), out);
  });
}

}  // extern "C"
