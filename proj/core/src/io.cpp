#include "hrnr/io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hrnr {

using nlohmann::json;

std::string format_double(double v) {
  // Canonical zero: "-0" would not survive a JSON round trip.
  if (v == 0.0) v = 0.0;
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double_text(const std::string& text, const std::string& field) {
  errno = 0;
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || end != begin + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError(field + ": not a finite number: \"" + text + "\"");
  }
  return v;
}

namespace {

double number_leaf(const json& j, const std::string& field) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(field + ": not a finite number");
    return v;
  }
  if (j.is_string()) {
    return parse_double_text(j.get<std::string>(), field);
  }
  throw ParseError(field + ": expected a number or a numeric string");
}

Complex complex_leaf(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(field + ": expected a [re, im] pair");
  }
  return Complex(number_leaf(j[0], field + "[0]"), number_leaf(j[1], field + "[1]"));
}

long long int_field(const json& doc, const std::string& field) {
  const auto it = doc.find(field);
  if (it == doc.end()) throw ParseError(field + ": missing");
  if (!it->is_number_integer()) throw ParseError(field + ": expected an integer");
  return it->get<long long>();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("document: invalid JSON: ") + e.what());
  }
}

void append_complex(std::string& out, Complex z) {
  out += '[';
  out += format_double(z.real());
  out += ',';
  out += format_double(z.imag());
  out += ']';
}

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

MatrixPolynomial parse_polynomial_document(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  const long long n = int_field(doc, "n");
  const long long m = int_field(doc, "m");
  if (n < 1 || n > 512) throw ParseError("n: must be in 1..512");
  if (m < 0 || m > 64) throw ParseError("m: must be in 0..64");
  const auto it = doc.find("coefficients");
  if (it == doc.end() || !it->is_array()) {
    throw ParseError("coefficients: expected an array");
  }
  if (static_cast<long long>(it->size()) != m + 1) {
    throw ParseError("coefficients: expected " + std::to_string(m + 1) +
                     " entries (m+1), got " + std::to_string(it->size()));
  }
  std::vector<CMatrix> coeffs;
  coeffs.reserve(static_cast<size_t>(m) + 1);
  for (long long p = 0; p <= m; ++p) {
    const std::string base = "coefficients[" + std::to_string(p) + "]";
    const json& mat = (*it)[static_cast<size_t>(p)];
    if (!mat.is_array() || static_cast<long long>(mat.size()) != n) {
      throw ParseError(base + ": expected " + std::to_string(n) + " rows");
    }
    CMatrix a(static_cast<int>(n), static_cast<int>(n));
    for (long long r = 0; r < n; ++r) {
      const std::string rbase = base + "[" + std::to_string(r) + "]";
      const json& row = mat[static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<long long>(row.size()) != n) {
        throw ParseError(rbase + ": expected " + std::to_string(n) + " entries");
      }
      for (long long c = 0; c < n; ++c) {
        a(static_cast<int>(r), static_cast<int>(c)) =
            complex_leaf(row[static_cast<size_t>(c)],
                         rbase + "[" + std::to_string(c) + "]");
      }
    }
    coeffs.push_back(std::move(a));
  }
  if (frobenius_norm(coeffs.back()) == 0.0) {
    throw ParseError("coefficients[" + std::to_string(m) +
                     "]: the lead coefficient must not be all zero");
  }
  return MatrixPolynomial(std::move(coeffs));
}

std::string serialize_polynomial_document(const MatrixPolynomial& p) {
  std::string out = "{\"n\":" + std::to_string(p.n()) +
                    ",\"m\":" + std::to_string(p.degree()) + ",\"coefficients\":[";
  for (int j = 0; j <= p.degree(); ++j) {
    if (j > 0) out += ',';
    out += '[';
    const CMatrix& a = p.coeff(j);
    for (int r = 0; r < p.n(); ++r) {
      if (r > 0) out += ',';
      out += '[';
      for (int c = 0; c < p.n(); ++c) {
        if (c > 0) out += ',';
        append_complex(out, a(r, c));
      }
      out += ']';
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

CMatrix parse_isometry_document(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  const long long rows = int_field(doc, "rows");
  const long long cols = int_field(doc, "cols");
  if (rows < 1 || rows > 512) throw ParseError("rows: must be in 1..512");
  if (cols < 1 || cols > rows) throw ParseError("cols: must be in 1..rows");
  const auto it = doc.find("entries");
  if (it == doc.end() || !it->is_array()) {
    throw ParseError("entries: expected an array");
  }
  if (static_cast<long long>(it->size()) != rows * cols) {
    throw ParseError("entries: expected " + std::to_string(rows * cols) +
                     " pairs (rows*cols), got " + std::to_string(it->size()));
  }
  CMatrix q(static_cast<int>(rows), static_cast<int>(cols));
  for (long long i = 0; i < rows * cols; ++i) {
    q(static_cast<int>(i / cols), static_cast<int>(i % cols)) =
        complex_leaf((*it)[static_cast<size_t>(i)],
                     "entries[" + std::to_string(i) + "]");
  }
  return q;
}

std::string serialize_isometry_document(const CMatrix& q) {
  std::string out = "{\"rows\":" + std::to_string(q.rows()) +
                    ",\"cols\":" + std::to_string(q.cols()) + ",\"entries\":[";
  for (int r = 0; r < q.rows(); ++r) {
    for (int c = 0; c < q.cols(); ++c) {
      if (r + c > 0) out += ',';
      append_complex(out, q(r, c));
    }
  }
  out += "]}\n";
  return out;
}

std::string grid_csv(const RegionGrid& grid) {
  std::string out = "x,y,status\n";
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Complex z = grid.cell_center(ix, iy);
      out += format_double(z.real());
      out += ',';
      out += format_double(z.imag());
      out += ',';
      out += to_string(grid.cells[static_cast<size_t>(iy) * grid.nx + ix]);
      out += '\n';
    }
  }
  return out;
}

std::string polygon_csv(const std::vector<Complex>& vertices) {
  std::string out = "x,y\n";
  for (const Complex& v : vertices) {
    out += format_double(v.real());
    out += ',';
    out += format_double(v.imag());
    out += '\n';
  }
  return out;
}

std::string grid_svg(const RegionGrid& grid) {
  const GridWindow& w = grid.window;
  const double aspect = (w.y_max - w.y_min) / (w.x_max - w.x_min);
  const double height = 1000.0 * aspect;
  const double cw = 1000.0 / grid.nx;
  const double ch = height / grid.ny;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 " +
         format_double(height) + "\">\n";
  out += "<desc>window x in [" + format_double(w.x_min) + "," +
         format_double(w.x_max) + "], y in [" + format_double(w.y_min) + "," +
         format_double(w.y_max) +
         "]; px = (x - x_min) / (x_max - x_min) * 1000; py = (y_max - y) / "
         "(y_max - y_min) * " +
         format_double(height) + "</desc>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"" + format_double(height) +
         "\" fill=\"#ffffff\"/>\n";
  for (int iy = 0; iy < grid.ny; ++iy) {
    int ix = 0;
    while (ix < grid.nx) {
      const Ternary s = grid.cells[static_cast<size_t>(iy) * grid.nx + ix];
      if (s == Ternary::Out) {
        ++ix;
        continue;
      }
      int run = 1;
      while (ix + run < grid.nx &&
             grid.cells[static_cast<size_t>(iy) * grid.nx + ix + run] == s) {
        ++run;
      }
      out += "<rect x=\"" + format_double(ix * cw) + "\" y=\"" +
             format_double(height - (iy + 1) * ch) + "\" width=\"" +
             format_double(run * cw) + "\" height=\"" + format_double(ch) +
             "\" fill=\"#2b6cb0\"";
      if (s == Ternary::Border) out += " fill-opacity=\"0.5\"";
      out += "/>\n";
      ix += run;
    }
  }
  out += "</svg>\n";
  return out;
}

std::string manifest_json(const RunManifest& m) {
  std::string out = "{\"command\":\"" + escape_json(m.command) + "\",\"options\":{";
  for (size_t i = 0; i < m.options.size(); ++i) {
    if (i > 0) out += ',';
    out += '"' + escape_json(m.options[i].first) + "\":\"" +
           escape_json(m.options[i].second) + '"';
  }
  out += "},\"seed\":" + std::to_string(m.seed);
  out += ",\"tool_version\":\"" + escape_json(m.tool_version) + '"';
  out += ",\"wall_seconds\":" + format_double(m.wall_seconds);
  out += "}\n";
  return out;
}

std::string manifest_path_for(const std::string& artifact_path) {
  return artifact_path + ".manifest.json";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError("read failed: " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw FileError("write failed: " + path);
}

}  // namespace hrnr
