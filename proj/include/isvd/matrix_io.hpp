#pragma once

#include <string>
#include <string_view>

#include "isvd/dense_matrix.hpp"

namespace isvd {

enum class MatrixFormat { automatic, csv, tsv };

/// Delimiter for a format; `automatic` resolves from the file extension
/// (.tsv/.tab → tab, anything else → comma).
char delimiter_for(MatrixFormat format, std::string_view path = {});

/// Parses delimited numeric text: one matrix row per line, LF or CRLF, blank
/// lines ignored. Throws ParseError naming the 1-based line for ragged rows,
/// non-numeric or non-finite fields, and "empty matrix" when no rows remain.
DenseMatrix parse_matrix(std::string_view text, char delimiter, bool skip_header = false);

DenseMatrix load_matrix(const std::string& path, MatrixFormat format = MatrixFormat::automatic,
                        bool skip_header = false);

/// 17 significant digits per value, so parse_matrix(format_matrix(m)) == m.
std::string format_matrix(const DenseMatrix& m, char delimiter = ',');

void save_matrix(const std::string& path, const DenseMatrix& m, char delimiter = ',');

/// Shortest-safe 17-significant-digit rendering used by every text output.
std::string format_number(double v);

}  // namespace isvd
