#pragma once

#include <gmpxx.h>
#include <Eigen/Core>

#include <string>
#include <vector>

namespace Eigen {

// Exact arbitrary-precision integer scalar for dense types.
template <> struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

}  // namespace Eigen

namespace monofan {

using Int = mpz_class;
using Index = Eigen::Index;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// floor division/remainder; gmp's default operator/ truncates toward zero
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int vector_gcd(const IntVector& v);

/// v divided by the gcd of its entries; the zero vector stays zero.
IntVector primitive(const IntVector& v);

bool lex_less(const IntVector& a, const IntVector& b);

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }
};

bool is_zero(const IntVector& v);

/// Columns of a matrix as a vector list and back.
std::vector<IntVector> matrix_cols(const IntMatrix& m);
IntMatrix cols_matrix(Index rows, const std::vector<IntVector>& cols);

IntVector make_vector(const std::vector<long>& entries);
IntMatrix make_matrix(const std::vector<std::vector<long>>& rows);

std::string to_string(const IntVector& v);
std::string to_string(const IntMatrix& m);

/// Sorted copy with exact duplicates removed.
std::vector<IntVector> sorted_unique(std::vector<IntVector> vs);

bool contains_vector(const std::vector<IntVector>& vs, const IntVector& v);

}  // namespace monofan
