#include "isvd/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "isvd/errors.hpp"

namespace isvd {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, std::size_t line) {
  std::string_view f = trim(field);
  if (!f.empty() && f.front() == '+') f.remove_prefix(1);
  if (f.empty()) throw ParseError("empty field", line);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size()) {
    throw ParseError("non-numeric field '" + std::string(field) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + std::string(field) + "'", line);
  return v;
}

}  // namespace

char delimiter_for(MatrixFormat format, std::string_view path) {
  switch (format) {
    case MatrixFormat::csv:
      return ',';
    case MatrixFormat::tsv:
      return '\t';
    case MatrixFormat::automatic:
      break;
  }
  const auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext;
  };
  return ends_with(".tsv") || ends_with(".tab") ? '\t' : ',';
}

DenseMatrix parse_matrix(std::string_view text, char delimiter, bool skip_header) {
  std::vector<double> entries;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = skip_header;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }

    std::size_t fields = 0;
    for (;;) {
      const auto d = line.find(delimiter);
      entries.push_back(parse_field(line.substr(0, d), line_no));
      ++fields;
      if (d == std::string_view::npos) break;
      line.remove_prefix(d + 1);
    }
    if (rows == 0) {
      cols = fields;
    } else if (fields != cols) {
      throw ParseError("expected " + std::to_string(cols) + " fields, found " +
                           std::to_string(fields),
                       line_no);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("empty matrix", 0);
  return {rows, cols, std::move(entries)};
}

DenseMatrix load_matrix(const std::string& path, MatrixFormat format, bool skip_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str(), delimiter_for(format, path), skip_header);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.detail(), e.line());
  }
}

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string format_matrix(const DenseMatrix& m, char delimiter) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += delimiter;
      out += format_number(m(r, c));
    }
    out += '\n';
  }
  return out;
}

void save_matrix(const std::string& path, const DenseMatrix& m, char delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_matrix(m, delimiter);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace isvd
