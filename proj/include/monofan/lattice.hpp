#pragma once

#include <optional>
#include <vector>

#include "monofan/ints.hpp"

namespace monofan::lattice {

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0.
struct SmithResult {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

SmithResult smith_normal_form(const IntMatrix& A);

Index rank(const IntMatrix& A);

/// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& A);

/// Inverse of a matrix with determinant +-1, via the adjugate.
IntMatrix unimodular_inverse(const IntMatrix& A);

bool is_unimodular(const IntMatrix& A);

/// Basis of { x : A x = 0 } over the integers (a saturated sublattice).
std::vector<IntVector> kernel_basis(const IntMatrix& A);

/// Some integer solution y of B y = v, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& B, const IntVector& v);

bool in_lattice(const std::vector<IntVector>& basis, const IntVector& v);

/// Canonical basis of the lattice spanned by the given vectors: the column
/// Hermite normal form (pivots positive, entries left of a pivot reduced).
std::vector<IntVector> lattice_basis(const std::vector<IntVector>& gens, Index dim);

/// Basis of the saturation { x : k x in L for some k >= 1 }.
std::vector<IntVector> saturate_lattice(const std::vector<IntVector>& basis, Index dim);

std::vector<IntVector> lattice_intersection(const std::vector<IntVector>& a,
                                            const std::vector<IntVector>& b, Index dim);

/// Canonical representative of v modulo the lattice spanned by `basis`.
IntVector reduce_mod_lattice(const IntVector& v, const std::vector<IntVector>& basis);

/// Coordinate split along a saturated sublattice L of Z^d: project() maps onto
/// Z^d / L ~= Z^(d-k), section() lifts back, reduce() picks the canonical
/// representative of v + L with zero L-part.
class SaturatedQuotient {
 public:
  SaturatedQuotient(const std::vector<IntVector>& sat_basis, Index dim);

  Index dim() const { return d_; }
  Index sub_rank() const { return k_; }
  Index quot_rank() const { return d_ - k_; }

  IntVector project(const IntVector& v) const;
  IntVector section(const IntVector& w) const;
  IntVector reduce(const IntVector& v) const;

 private:
  Index d_ = 0;
  Index k_ = 0;
  IntMatrix U_;     // unimodular; maps L onto Z^k x {0}
  IntMatrix Uinv_;
};

/// Multiplicity vector x in N^n with sum x_i * gens_i = v, or absent.
/// `grading` must pair strictly positively with every generator; the search
/// is exhaustive because the grading value bounds every coordinate.
/// Throws NoPositiveGrading otherwise.
std::optional<IntVector> solve_nonneg(const std::vector<IntVector>& gens, const IntVector& v,
                                      const IntVector& grading);

}  // namespace monofan::lattice
