#include "bggforge/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bggforge/errors.hpp"

namespace bgg {

namespace {

std::string decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

[[noreturn]] void malformed(const std::filesystem::path& path, const std::string& what) {
  throw IoError("malformed matrix file '" + path.string() + "': " + what);
}

}  // namespace

std::string matrix_market_text(const QSparse& m, const std::string& comment) {
  std::ostringstream out;
  out << "%%MatrixMarket matrix coordinate real general\n";
  if (!comment.empty()) out << "% " << comment << "\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (int r = 0; r < m.rows(); ++r)
    for (std::size_t k = m.row_begin(r); k < m.row_end(r); ++k)
      out << r + 1 << ' ' << m.col_at(k) + 1 << ' ' << decimal(m.value_at(k).get_d()) << '\n';
  return out.str();
}

std::string rational_sidecar_text(const QSparse& m) {
  std::ostringstream out;
  out << "%%bgg-forge exact sidecar\n";
  out << "%q " << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (int r = 0; r < m.rows(); ++r)
    for (std::size_t k = m.row_begin(r); k < m.row_end(r); ++k)
      out << "%q " << r + 1 << ' ' << m.col_at(k) + 1 << ' ' << to_string(m.value_at(k)) << '\n';
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

SparseMatrix<double> read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket matrix coordinate real general", 0) != 0)
    malformed(path, "expected a coordinate real general header");
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  std::istringstream size(line);
  int rows = 0, cols = 0;
  std::size_t nnz = 0;
  if (!(size >> rows >> cols >> nnz)) malformed(path, "missing size line");
  std::vector<Triplet<double>> t;
  t.reserve(nnz);
  for (std::size_t e = 0; e < nnz; ++e) {
    int i = 0, j = 0;
    double v = 0;
    if (!(in >> i >> j >> v)) malformed(path, "truncated entry list");
    if (i < 1 || i > rows || j < 1 || j > cols) malformed(path, "entry index out of range");
    t.push_back({i - 1, j - 1, v});
  }
  return SparseMatrix<double>::from_triplets(rows, cols, std::move(t));
}

QSparse read_rational_sidecar(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line) || line != "%%bgg-forge exact sidecar") malformed(path, "expected a sidecar header");
  auto fields = [&](std::string& l) -> std::istringstream {
    if (l.rfind("%q ", 0) != 0) malformed(path, "expected a '%q' line");
    return std::istringstream(l.substr(3));
  };
  if (!std::getline(in, line)) malformed(path, "missing size line");
  std::istringstream size = fields(line);
  int rows = 0, cols = 0;
  std::size_t nnz = 0;
  if (!(size >> rows >> cols >> nnz)) malformed(path, "bad size line");
  std::vector<Triplet<Rational>> t;
  t.reserve(nnz);
  for (std::size_t e = 0; e < nnz; ++e) {
    if (!std::getline(in, line)) malformed(path, "truncated entry list");
    std::istringstream f = fields(line);
    int i = 0, j = 0;
    std::string v;
    if (!(f >> i >> j >> v)) malformed(path, "bad entry line");
    if (i < 1 || i > rows || j < 1 || j > cols) malformed(path, "entry index out of range");
    try {
      t.push_back({i - 1, j - 1, parse_rational(v)});
    } catch (const InvalidArgument& err) {
      malformed(path, err.what());
    }
  }
  return QSparse::from_triplets(rows, cols, std::move(t));
}

}  // namespace bgg
