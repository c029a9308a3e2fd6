#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mpinv/matrix.hpp"

namespace mpinv::cli {

enum class FileFormat { kCsv, kJson };

std::string_view to_string(FileFormat format);
/// "csv" or "json"; anything else throws std::invalid_argument.
FileFormat parse_format(std::string_view name);
/// .json means json, everything else is read as csv.
FileFormat format_from_extension(const std::filesystem::path& path);

/// Malformed matrix text. row and col are 1-based; 0 means "not applicable"
/// (json structure errors have no cell position).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t col);
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// One csv cell: FLOAT, FLOAT+FLOATi, FLOAT-FLOATi, FLOATi, i or -i.
/// Blanks anywhere in the cell are ignored and U+2212 counts as a minus sign.
/// Throws std::invalid_argument on anything else, including inf and nan.
Complex parse_complex(std::string_view cell);

/// Shortest text that parse_complex reads back, using `precision`
/// significant digits: "1.5", "-2i", "0.25-3i".
std::string format_complex(Complex z, int precision);

ComplexMatrix parse_csv(std::string_view text);
ComplexMatrix parse_json(std::string_view text);
ComplexMatrix parse_matrix(std::string_view text, FileFormat format);

std::string to_csv(const ComplexMatrix& m, int precision = 17);
/// {"rows","cols","entries":[[re,im],...]}; doubles are written with
/// enough digits to round-trip, so precision only affects csv.
std::string to_json(const ComplexMatrix& m);
std::string format_matrix(const ComplexMatrix& m, FileFormat format, int precision = 17);

/// Throws std::runtime_error naming the path when it cannot be opened.
ComplexMatrix read_matrix(const std::filesystem::path& path, FileFormat format);
void write_matrix(const ComplexMatrix& m, const std::filesystem::path& path, FileFormat format, int precision = 17);

}  // namespace mpinv::cli
