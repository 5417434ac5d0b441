#include "monofan/ints.hpp"

#include <algorithm>
#include <sstream>

namespace monofan {

Int vector_gcd(const IntVector& v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd_int(g, v(i));
  return g;
}

IntVector primitive(const IntVector& v) {
  Int g = vector_gcd(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
  return out;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

bool is_zero(const IntVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

std::vector<IntVector> matrix_cols(const IntMatrix& m) {
  std::vector<IntVector> out;
  out.reserve(static_cast<size_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

IntMatrix cols_matrix(Index rows, const std::vector<IntVector>& cols) {
  IntMatrix m(rows, static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Index>(j)) = cols[j];
  return m;
}

IntVector make_vector(const std::vector<long>& entries) {
  IntVector v(static_cast<Index>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) v(static_cast<Index>(i)) = entries[i];
  return v;
}

IntMatrix make_matrix(const std::vector<std::vector<long>>& rows) {
  if (rows.empty()) return IntMatrix(0, 0);
  IntMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v(i);
  }
  os << ")";
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m(i, j);
    }
  }
  os << "]";
  return os.str();
}

std::vector<IntVector> sorted_unique(std::vector<IntVector> vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  vs.erase(std::unique(vs.begin(), vs.end(),
                       [](const IntVector& a, const IntVector& b) { return a == b; }),
           vs.end());
  return vs;
}

bool contains_vector(const std::vector<IntVector>& vs, const IntVector& v) {
  for (const auto& u : vs)
    if (u.size() == v.size() && u == v) return true;
  return false;
}

}  // namespace monofan
