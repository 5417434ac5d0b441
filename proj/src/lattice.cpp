#include "monofan/lattice.hpp"

#include <algorithm>
#include <cassert>

#include "monofan/errors.hpp"

namespace monofan::lattice {

namespace {

// g = p*a + q*b with g = gcd(a,b) >= 0
void ext_gcd(const Int& a, const Int& b, Int& g, Int& p, Int& q) {
  mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

struct SmithWork {
  IntMatrix U, D, V;

  void swap_rows(Index a, Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    U.row(a).swap(U.row(b));
  }
  void swap_cols(Index a, Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    V.col(a).swap(V.col(b));
  }
  // rows (t,i) <- [[p,q],[r,s]] * rows (t,i), det(ps-qr) = +-1
  void combine_rows(Index t, Index i, const Int& p, const Int& q, const Int& r, const Int& s) {
    using RowVec = Eigen::Matrix<Int, 1, Eigen::Dynamic>;
    RowVec dt = D.row(t), di = D.row(i);
    D.row(t) = p * dt + q * di;
    D.row(i) = r * dt + s * di;
    RowVec ut = U.row(t), ui = U.row(i);
    U.row(t) = p * ut + q * ui;
    U.row(i) = r * ut + s * ui;
  }
  void combine_cols(Index t, Index j, const Int& p, const Int& q, const Int& r, const Int& s) {
    IntVector dt = D.col(t), dj = D.col(j);
    D.col(t) = p * dt + q * dj;
    D.col(j) = r * dt + s * dj;
    IntVector vt = V.col(t), vj = V.col(j);
    V.col(t) = p * vt + q * vj;
    V.col(j) = r * vt + s * vj;
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& A) {
  const Index m = A.rows(), n = A.cols();
  SmithWork w{IntMatrix::Identity(m, m), A, IntMatrix::Identity(n, n)};

  const Index steps = std::min(m, n);
  for (Index t = 0; t < steps; ++t) {
    // pivot: entry of smallest nonzero absolute value in the trailing block
    Index pi = -1, pj = -1;
    Int best = 0;
    for (Index i = t; i < m; ++i)
      for (Index j = t; j < n; ++j) {
        if (w.D(i, j) == 0) continue;
        Int a = abs_int(w.D(i, j));
        if (pi < 0 || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool col_clear = true;
      for (Index i = t + 1; i < m; ++i) {
        if (w.D(i, t) == 0) continue;
        col_clear = false;
        Int a = w.D(t, t), b = w.D(i, t);
        if (a != 0 && b % a == 0) {
          w.combine_rows(t, i, 1, 0, -b / a, 1);  // plain elimination, row t untouched
        } else {
          Int g, p, q;
          ext_gcd(a, b, g, p, q);
          w.combine_rows(t, i, p, q, -b / g, a / g);
        }
      }
      bool row_clear = true;
      for (Index j = t + 1; j < n; ++j) {
        if (w.D(t, j) == 0) continue;
        row_clear = false;
        Int a = w.D(t, t), b = w.D(t, j);
        if (a != 0 && b % a == 0) {
          w.combine_cols(t, j, 1, 0, -b / a, 1);
        } else {
          Int g, p, q;
          ext_gcd(a, b, g, p, q);
          w.combine_cols(t, j, p, q, -b / g, a / g);
        }
      }
      if (!row_clear) continue;  // column may have been refilled
      bool col_ok = true;
      for (Index i = t + 1; i < m; ++i)
        if (w.D(i, t) != 0) col_ok = false;
      if (!col_ok) continue;
      if (col_clear && row_clear) {
        // pivot must divide the whole trailing block
        Index bi = -1, bj = -1;
        for (Index i = t + 1; i < m && bi < 0; ++i)
          for (Index j = t + 1; j < n; ++j)
            if (w.D(i, j) % w.D(t, t) != 0) {
              bi = i;
              bj = j;
              break;
            }
        if (bi < 0) break;
        w.combine_rows(t, bi, 1, 1, 0, 1);  // row_t += row_bi, reruns the gcd steps
        continue;
      }
    }
    if (w.D(t, t) < 0) {
      w.D.row(t) = -w.D.row(t);
      w.U.row(t) = -w.U.row(t);
    }
  }

  assert(w.U * A * w.V == w.D);
  return {w.U, w.D, w.V};
}

Index rank(const IntMatrix& A) {
  SmithResult s = smith_normal_form(A);
  Index r = 0;
  const Index k = std::min(A.rows(), A.cols());
  for (Index i = 0; i < k; ++i)
    if (s.D(i, i) != 0) ++r;
  return r;
}

Int determinant(const IntMatrix& A) {
  assert(A.rows() == A.cols());
  const Index n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Int prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      Index piv = -1;
      for (Index i = k + 1; i < n; ++i)
        if (M(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      M.row(k).swap(M.row(piv));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign > 0 ? M(n - 1, n - 1) : Int(-M(n - 1, n - 1));
}

IntMatrix unimodular_inverse(const IntMatrix& A) {
  const Index n = A.rows();
  assert(A.cols() == n);
  Int det = determinant(A);
  assert(det == 1 || det == -1);
  IntMatrix inv(n, n);
  if (n == 0) return inv;
  IntMatrix minor(n - 1, n - 1);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      for (Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = A(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = determinant(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      inv(j, i) = cof / det;  // det is a unit
    }
  return inv;
}

bool is_unimodular(const IntMatrix& A) {
  if (A.rows() != A.cols()) return false;
  Int d = determinant(A);
  return d == 1 || d == -1;
}

std::vector<IntVector> kernel_basis(const IntMatrix& A) {
  SmithResult s = smith_normal_form(A);
  Index r = 0;
  const Index k = std::min(A.rows(), A.cols());
  for (Index i = 0; i < k; ++i)
    if (s.D(i, i) != 0) ++r;
  std::vector<IntVector> out;
  for (Index j = r; j < A.cols(); ++j) out.push_back(s.V.col(j));
  return out;
}

std::optional<IntVector> solve_integer(const IntMatrix& B, const IntVector& v) {
  assert(B.rows() == v.size());
  SmithResult s = smith_normal_form(B);
  IntVector w = s.U * v;
  const Index m = B.rows(), n = B.cols();
  IntVector z = IntVector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    Int d = (i < n) ? s.D(i, i) : Int(0);
    if (d != 0) {
      if (w(i) % d != 0) return std::nullopt;
      z(i) = w(i) / d;
    } else if (w(i) != 0) {
      return std::nullopt;
    }
  }
  return IntVector(s.V * z);
}

bool in_lattice(const std::vector<IntVector>& basis, const IntVector& v) {
  if (is_zero(v)) return true;
  if (basis.empty()) return false;
  return solve_integer(cols_matrix(v.size(), basis), v).has_value();
}

std::vector<IntVector> lattice_basis(const std::vector<IntVector>& gens, Index dim) {
  if (gens.empty()) return {};
  IntMatrix M = cols_matrix(dim, gens);
  const Index n = M.cols();
  Index col = 0;
  for (Index row = 0; row < dim && col < n; ++row) {
    // gcd-fold everything in this row into column `col`
    for (;;) {
      Index j = -1;
      for (Index jj = col; jj < n; ++jj)
        if (M(row, jj) != 0) {
          j = jj;
          break;
        }
      if (j < 0) break;
      if (j != col) M.col(col).swap(M.col(j));
      bool clean = true;
      for (Index jj = col + 1; jj < n; ++jj) {
        if (M(row, jj) == 0) continue;
        clean = false;
        Int a = M(row, col), b = M(row, jj), g, p, q;
        ext_gcd(a, b, g, p, q);
        Int r = -b / g, s = a / g;
        IntVector cc = M.col(col), cj = M.col(jj);
        M.col(col) = p * cc + q * cj;
        M.col(jj) = r * cc + s * cj;
      }
      if (clean) break;
    }
    if (M(row, col) == 0) continue;  // no pivot in this row
    if (M(row, col) < 0) M.col(col) = -M.col(col);
    // reduce earlier pivot columns against this one
    for (Index jj = 0; jj < col; ++jj) {
      Int q = floor_div(M(row, jj), M(row, col));
      if (q != 0) M.col(jj) -= q * M.col(col);
    }
    ++col;
  }
  std::vector<IntVector> out;
  for (Index j = 0; j < col; ++j) out.push_back(M.col(j));
  return out;
}

std::vector<IntVector> saturate_lattice(const std::vector<IntVector>& basis, Index dim) {
  if (basis.empty()) return {};
  IntMatrix B = cols_matrix(dim, basis);
  SmithResult s = smith_normal_form(B);
  IntMatrix Uinv = unimodular_inverse(s.U);
  std::vector<IntVector> out;
  const Index k = std::min(B.rows(), B.cols());
  for (Index i = 0; i < k; ++i) {
    if (s.D(i, i) == 0) break;
    out.push_back(IntVector(Uinv.col(i)));
  }
  return lattice_basis(out, dim);
}

std::vector<IntVector> lattice_intersection(const std::vector<IntVector>& a,
                                            const std::vector<IntVector>& b, Index dim) {
  if (a.empty() || b.empty()) return {};
  const Index ka = static_cast<Index>(a.size()), kb = static_cast<Index>(b.size());
  IntMatrix AB(dim, ka + kb);
  for (Index j = 0; j < ka; ++j) AB.col(j) = a[static_cast<size_t>(j)];
  for (Index j = 0; j < kb; ++j) AB.col(ka + j) = -b[static_cast<size_t>(j)];
  std::vector<IntVector> ker = kernel_basis(AB);
  std::vector<IntVector> gens;
  IntMatrix Am = cols_matrix(dim, a);
  for (const auto& k : ker) gens.push_back(IntVector(Am * k.head(ka)));
  return lattice_basis(gens, dim);
}

IntVector reduce_mod_lattice(const IntVector& v, const std::vector<IntVector>& gens) {
  if (gens.empty()) return v;
  const Index d = v.size();
  std::vector<IntVector> basis = lattice_basis(gens, d);
  IntMatrix B = cols_matrix(d, basis);
  SmithResult s = smith_normal_form(B);
  IntVector y = s.U * v;
  const Index k = std::min(B.rows(), B.cols());
  for (Index i = 0; i < k; ++i) {
    if (s.D(i, i) == 0) break;
    y(i) = floor_mod(y(i), s.D(i, i));
  }
  return IntVector(unimodular_inverse(s.U) * y);
}

SaturatedQuotient::SaturatedQuotient(const std::vector<IntVector>& sat_basis, Index dim)
    : d_(dim), k_(static_cast<Index>(sat_basis.size())) {
  if (k_ == 0) {
    U_ = IntMatrix::Identity(d_, d_);
    Uinv_ = U_;
    return;
  }
  IntMatrix B = cols_matrix(d_, sat_basis);
  SmithResult s = smith_normal_form(B);
  for (Index i = 0; i < k_; ++i) assert(s.D(i, i) == 1);  // requires a saturated sublattice
  U_ = s.U;
  Uinv_ = unimodular_inverse(U_);
}

IntVector SaturatedQuotient::project(const IntVector& v) const {
  IntVector y = U_ * v;
  return y.tail(d_ - k_);
}

IntVector SaturatedQuotient::section(const IntVector& w) const {
  IntVector y = IntVector::Zero(d_);
  y.tail(d_ - k_) = w;
  return IntVector(Uinv_ * y);
}

IntVector SaturatedQuotient::reduce(const IntVector& v) const {
  return section(project(v));
}

namespace {

bool solve_nonneg_rec(const std::vector<IntVector>& gens, const std::vector<Int>& wt, size_t i,
                      IntVector& rem, Int t, IntVector& x) {
  if (t == 0 && is_zero(rem)) {
    for (size_t j = i; j < gens.size(); ++j) x(static_cast<Index>(j)) = 0;
    return true;
  }
  if (i == gens.size()) return false;
  Int cmax = t / wt[i];
  for (Int c = 0; c <= cmax; ++c) {
    x(static_cast<Index>(i)) = c;
    if (solve_nonneg_rec(gens, wt, i + 1, rem, t - c * wt[i], x)) return true;
    rem -= gens[i];
  }
  // restore rem after trying cmax+1 subtractions in total
  Int taken = cmax + 1;
  rem += taken * gens[i];
  return false;
}

}  // namespace

std::optional<IntVector> solve_nonneg(const std::vector<IntVector>& gens, const IntVector& v,
                                      const IntVector& grading) {
  std::vector<Int> wt;
  wt.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.size() != grading.size())
      throw NoPositiveGrading("grading dimension does not match generators");
    Int w = grading.dot(g);
    if (w <= 0)
      throw NoPositiveGrading("grading is not strictly positive on generator " + to_string(g));
    wt.push_back(w);
  }
  if (v.size() != grading.size()) throw NoPositiveGrading("grading dimension does not match target");
  Int t = grading.dot(v);
  if (t < 0) return std::nullopt;
  IntVector x(static_cast<Index>(gens.size()));
  IntVector rem = v;
  if (solve_nonneg_rec(gens, wt, 0, rem, t, x)) return x;
  return std::nullopt;
}

}  // namespace monofan::lattice
