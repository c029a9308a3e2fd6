#include "mpinv/cli/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "mpinv/error.hpp"

namespace mpinv::cli {

namespace {

// Whole-string double; a leading '+' is allowed, inf and nan are not.
bool parse_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty() || s.front() == '+') return false;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string normalize_cell(std::string_view cell) {
  std::string out;
  out.reserve(cell.size());
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const char c = cell[i];
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (c == '\xE2' && i + 2 < cell.size() && cell[i + 1] == '\x88' && cell[i + 2] == '\x92') {
      out.push_back('-');
      i += 2;
    } else if (c != ' ' && c != '\t' && c != '\r') {
      out.push_back(c);
    }
  }
  return out;
}

std::string format_real(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

}  // namespace

std::string_view to_string(FileFormat format) { return format == FileFormat::kJson ? "json" : "csv"; }

FileFormat parse_format(std::string_view name) {
  if (name == "csv") return FileFormat::kCsv;
  if (name == "json") return FileFormat::kJson;
  throw std::invalid_argument("unknown matrix format '" + std::string(name) + "'");
}

FileFormat format_from_extension(const std::filesystem::path& path) {
  return path.extension() == ".json" ? FileFormat::kJson : FileFormat::kCsv;
}

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t col)
    : std::runtime_error(what), row_(row), col_(col) {}

Complex parse_complex(std::string_view cell) {
  const std::string s = normalize_cell(cell);
  const auto bad = [&] { return std::invalid_argument("not a complex number: '" + std::string(cell) + "'"); };
  if (s.empty()) throw bad();

  double re = 0.0;
  if (s.back() != 'i') {
    if (!parse_real(s, re)) throw bad();
    return {re, 0.0};
  }

  const std::string_view body(s.data(), s.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string_view real_part;
  std::string_view imag_part = body;
  if (split != std::string_view::npos) {
    real_part = body.substr(0, split);
    imag_part = body.substr(split);
    if (!parse_real(real_part, re)) throw bad();
  }

  double im = 0.0;
  if (imag_part.empty() || imag_part == "+") {
    im = 1.0;
  } else if (imag_part == "-") {
    im = -1.0;
  } else if (!parse_real(imag_part, im)) {
    throw bad();
  }
  return {re, im};
}

std::string format_complex(Complex z, int precision) {
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) return format_real(re, precision);
  std::string imag = format_real(im, precision) + "i";
  if (re == 0.0) return imag;
  if (imag.front() != '-') imag.insert(imag.begin(), '+');
  return format_real(re, precision) + imag;
}

ComplexMatrix parse_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && normalize_cell(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty matrix file", 0, 0);

  std::vector<std::vector<Complex>> rows;
  for (std::size_t line_no = 1; line_no <= lines.size(); ++line_no) {
    const std::string_view line = lines[line_no - 1];
    if (normalize_cell(line).empty()) {
      throw ParseError("blank line " + std::to_string(line_no) + " inside matrix", line_no, 0);
    }

    std::vector<Complex> cells;
    std::size_t cell_start = 0;
    std::size_t col_no = 0;
    while (true) {
      std::size_t comma = line.find(',', cell_start);
      const std::string_view cell = line.substr(cell_start, comma == std::string_view::npos ? line.npos : comma - cell_start);
      ++col_no;
      try {
        cells.push_back(parse_complex(cell));
      } catch (const std::invalid_argument& e) {
        throw ParseError("row " + std::to_string(line_no) + ", column " + std::to_string(col_no) + ": " + e.what(),
                         line_no, col_no);
      }
      if (comma == std::string_view::npos) break;
      cell_start = comma + 1;
    }
    if (!rows.empty() && cells.size() != rows.front().size()) {
      throw ShapeError("ragged csv: row " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " cells, row 1 has " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(cells));
  }

  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  std::vector<Complex> flat;
  flat.reserve(m * n);
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return ComplexMatrix(m, n, std::move(flat));
}

ComplexMatrix parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what(), 0, 0);
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries")) {
    throw ParseError("json matrix needs \"rows\", \"cols\" and \"entries\"", 0, 0);
  }
  const auto& rows = doc["rows"];
  const auto& cols = doc["cols"];
  const auto& entries = doc["entries"];
  if (!rows.is_number_unsigned() || !cols.is_number_unsigned()) {
    throw ParseError("json \"rows\" and \"cols\" must be nonnegative integers", 0, 0);
  }
  if (!entries.is_array()) throw ParseError("json \"entries\" must be an array", 0, 0);
  const std::size_t m = rows.get<std::size_t>();
  const std::size_t n = cols.get<std::size_t>();
  if (entries.size() != m * n) {
    throw ShapeError("json matrix declares " + std::to_string(m) + "x" + std::to_string(n) + " but has " +
                     std::to_string(entries.size()) + " entries");
  }
  std::vector<Complex> flat;
  flat.reserve(m * n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const std::size_t r = n == 0 ? 0 : k / n + 1;
    const std::size_t c = n == 0 ? 0 : k % n + 1;
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("json entry " + std::to_string(k) + " (row " + std::to_string(r) + ", column " +
                           std::to_string(c) + ") is not an [re, im] pair",
                       r, c);
    }
    const Complex z(e[0].get<double>(), e[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ParseError("json entry " + std::to_string(k) + " is not finite", r, c);
    }
    flat.push_back(z);
  }
  return ComplexMatrix(m, n, std::move(flat));
}

ComplexMatrix parse_matrix(std::string_view text, FileFormat format) {
  return format == FileFormat::kJson ? parse_json(text) : parse_csv(text);
}

std::string to_csv(const ComplexMatrix& m, int precision) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_complex(m(r, c), precision);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ComplexMatrix& m) {
  nlohmann::ordered_json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  auto entries = nlohmann::ordered_json::array();
  for (const Complex& z : m.entries()) entries.push_back({z.real(), z.imag()});
  doc["entries"] = std::move(entries);
  return doc.dump() + "\n";
}

std::string format_matrix(const ComplexMatrix& m, FileFormat format, int precision) {
  return format == FileFormat::kJson ? to_json(m) : to_csv(m, precision);
}

ComplexMatrix read_matrix(const std::filesystem::path& path, FileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), format);
}

void write_matrix(const ComplexMatrix& m, const std::filesystem::path& path, FileFormat format, int precision) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << format_matrix(m, format, precision);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace mpinv::cli
