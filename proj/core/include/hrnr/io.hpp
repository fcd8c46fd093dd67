#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hrnr/matpoly.hpp"
#include "hrnr/matrix_range.hpp"
#include "hrnr/poly_range.hpp"

namespace hrnr {

inline constexpr const char* kToolVersion = "0.1.0";

// Input rejection; the message names the offending field or flag.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

// Double from a JSON-level string field; accepts the usual decimal forms and
// C99 hex-floats ("0x1.8p+1"). Throws ParseError naming `field`.
double parse_double_text(const std::string& text, const std::string& field);

// {"n": .., "m": .., "coefficients": [per power, n x n rows of [re, im]]}.
// Numeric leaves may be JSON numbers or hex-float strings. The last
// coefficient must not be all-zero.
MatrixPolynomial parse_polynomial_document(const std::string& text);
std::string serialize_polynomial_document(const MatrixPolynomial& p);

// {"rows": n, "cols": k, "entries": [[re, im], ...] row-major}. Returns the
// raw matrix; orthonormality policy is the caller's.
CMatrix parse_isometry_document(const std::string& text);
std::string serialize_isometry_document(const CMatrix& q);

// One `x,y,status` row per cell center, row-major from the bottom row, LF
// line endings, `.` decimal point.
std::string grid_csv(const RegionGrid& grid);

// `x,y` header plus one row per vertex.
std::string polygon_csv(const std::vector<Complex>& vertices);

// Filled-cell rendering: IN cells opaque, BORDER cells half-opaque, OUT
// cells unpainted. Horizontal runs of equal status merge into one rect. The
// window-to-viewBox mapping is stated in a <desc> element.
std::string grid_svg(const RegionGrid& grid);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> options;  // resolved values
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  double wall_seconds = 0.0;
};

std::string manifest_json(const RunManifest& m);

// The manifest written next to an artifact: `<artifact>.manifest.json`.
std::string manifest_path_for(const std::string& artifact_path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hrnr
