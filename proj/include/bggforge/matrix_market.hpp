#pragma once

#include <filesystem>
#include <string>

#include "bggforge/sparse.hpp"

namespace bgg {

/// Coordinate real general Matrix Market text, entries in row-major order,
/// values printed with 17 significant digits.
std::string matrix_market_text(const QSparse& m, const std::string& comment = "");
/// Exact sidecar: every line is a '%' comment so the file never parses as a
/// second matrix. Size line "%q rows cols nnz", entry lines "%q i j num/den".
std::string rational_sidecar_text(const QSparse& m);

void write_text_file(const std::filesystem::path& path, const std::string& text);

SparseMatrix<double> read_matrix_market(const std::filesystem::path& path);
QSparse read_rational_sidecar(const std::filesystem::path& path);

}  // namespace bgg
