#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "monofan/ints.hpp"
#include "monofan/polyhedral.hpp"

namespace monofan::monoid {

/// Finitely generated submonoid of a lattice Z^d, given by generators.
/// Cancellative and torsion-free by construction. Carries the cone it spans,
/// a grading that is zero exactly on the unit generators, and the unit
/// lattice S n (-S), so membership is decidable by a bounded graded search.
class AffineMonoid {
 public:
  static AffineMonoid from_generators(Index ambient_rank, std::vector<IntVector> gens);

  Index ambient_rank() const { return d_; }
  const std::vector<IntVector>& generators() const { return gens_; }
  const polyhedral::Cone& cone() const { return cone_; }
  const IntVector& grading() const { return grading_; }
  bool is_unit_generator(size_t i) const { return unit_gen_[i] != 0; }
  const std::vector<IntVector>& unit_lattice() const { return unit_lattice_; }
  std::vector<IntVector> nonunit_generators() const;

  bool contains(const IntVector& v) const;
  bool is_group() const;
  bool is_zero_monoid() const { return gens_.empty(); }

 private:
  AffineMonoid() = default;
  Index d_ = 0;
  std::vector<IntVector> gens_;
  polyhedral::Cone cone_;
  IntVector grading_;
  std::vector<char> unit_gen_;
  std::vector<IntVector> unit_lattice_;
};

/// Equality and inclusion by mutual generator membership.
bool submonoid_of(const AffineMonoid& sub, const AffineMonoid& sup);
bool same_monoid(const AffineMonoid& a, const AffineMonoid& b);

/// Exponent vector x over the generator list with sum x_i g_i = v, or absent.
/// The unit part is balanced across +- generator pairs; a unit generator
/// whose negative has no nonnegative expression makes the search give up.
std::optional<IntVector> express(const AffineMonoid& S, const IntVector& v);

/// The unit group S* = S n (-S) as a monoid (generated by +- unit generators).
AffineMonoid units(const AffineMonoid& S);

/// Generators of the unique maximal ideal S+ = S \ S*: the non-unit generators.
std::vector<IntVector> maximal_ideal(const AffineMonoid& S);

/// Prime ideal of an affine monoid, named by its complement face: the ideal is
/// everything outside the N-span of the selected generators.
struct PrimeIdeal {
  std::vector<Index> complement_face;  // sorted generator indices
  friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

/// All primes, one per face of the spanned cone. The empty ideal (complement
/// = S) is always present; S itself is never an ideal with submonoid
/// complement, so it never appears.
std::vector<PrimeIdeal> primes(const AffineMonoid& S);

bool is_prime_of(const AffineMonoid& S, const PrimeIdeal& p);

/// S + N(-f). Throws NotAMember when f is not in S.
AffineMonoid localize(const AffineMonoid& S, const IntVector& f);

/// S + (-F) for the complement face F of p. Throws InvalidPrime.
AffineMonoid localize_at_prime(const AffineMonoid& S, const PrimeIdeal& p);

struct GroupCompletion {
  Index rank = 0;
  std::vector<IntVector> basis;  // canonical basis of Z S inside Z^d
};
GroupCompletion group_completion(const AffineMonoid& S);

/// Z S intersected with the real cone spanned by S, as an affine monoid:
/// rewrite in a basis of Z S, take the Hilbert-style generators there, map
/// back. Idempotent.
AffineMonoid saturation(const AffineMonoid& S);
bool is_saturated(const AffineMonoid& S);

/// Canonical representatives of the irreducible classes modulo units; for a
/// positive monoid this is the unique minimal generating set.
std::vector<IntVector> minimal_generators(const AffineMonoid& S);

/// Unimodular maps A with A(S) = T, for monoids whose group completion is the
/// full ambient lattice on both sides. Exhaustive over bijections of minimal
/// generators; for monoids with units the unit block is matched canonically,
/// so the list may omit unit-twisted variants (every returned map is verified).
std::vector<IntMatrix> full_rank_iso_candidates(const AffineMonoid& S, const AffineMonoid& T);

/// Monoid isomorphism, decided after rewriting both sides in coordinates on
/// their group completions.
bool are_isomorphic(const AffineMonoid& S, const AffineMonoid& T);

/// Finitely presented commutative monoid: relation pairs (u, v) each stating
/// sum u_i g_i = sum v_i g_i between formal N-words.
struct PresentedMonoid {
  Index generator_count = 0;
  std::vector<std::pair<IntVector, IntVector>> relations;
};

struct CancellationWitness {
  IntVector a, b, c;  // a+c = b+c holds, a and b are not identified below the bound
};
struct TorsionWitness {
  long n = 0;
  IntVector s, s_prime;  // n*s = n*s' holds, s and s' are not identified below the bound
};

/// Bounded congruence closure on words of total degree <= degree_bound.
/// A returned witness is a genuine equation; "no witness" is a pass up to the
/// bound, not a proof.
std::optional<CancellationWitness> is_cancellative_bounded(const PresentedMonoid& P,
                                                           long degree_bound);
std::optional<TorsionWitness> is_torsion_free_bounded(const PresentedMonoid& P, long degree_bound);

struct Affinization {
  AffineMonoid monoid;
  IntMatrix generator_images;  // column j = image of generator j
};

/// Universal lattice image of a presented monoid: absent when the universal
/// group has torsion, a bounded check fails, or words below the bound are
/// identified by the lattice map but not by the congruence.
std::optional<Affinization> affinize(const PresentedMonoid& P, long degree_bound);

}  // namespace monofan::monoid
