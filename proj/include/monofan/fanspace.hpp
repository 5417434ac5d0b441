#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monofan/ints.hpp"
#include "monofan/monoid.hpp"
#include "monofan/polyhedral.hpp"

namespace monofan::fanspace {

/// Monoided space on a finite Alexandrov topology: points with a partial
/// order (p <= q reads "p is a generization of q"; opens are the down-sets),
/// an affine monoid stalk per point, and an injective restriction map
/// stalk(q) -> stalk(p) for every comparable pair, consistent along chains.
class MonoidedSpace {
 public:
  /// `relations` lists pairs (p, q) with p <= q; the reflexive-transitive
  /// closure is formed and checked to be a partial order. `given_maps` must
  /// cover at least the covering pairs, keyed by (q, p); composites are
  /// filled in and every parallel path must agree. Throws IllFormedSpace.
  static MonoidedSpace build(std::vector<std::string> names,
                             std::vector<monoid::AffineMonoid> stalks,
                             const std::vector<std::pair<size_t, size_t>>& relations,
                             const std::map<std::pair<size_t, size_t>, IntMatrix>& given_maps);

  /// Same poset, identity restriction maps; all stalks share one ambient
  /// lattice.
  static MonoidedSpace build_with_identities(std::vector<std::string> names,
                                             std::vector<monoid::AffineMonoid> stalks,
                                             const std::vector<std::pair<size_t, size_t>>& relations);

  size_t point_count() const { return stalks_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const monoid::AffineMonoid& stalk(size_t p) const { return stalks_[p]; }
  bool le(size_t p, size_t q) const { return leq_[p][q] != 0; }

  /// Restriction map stalk(q) -> stalk(p) for p <= q.
  IntMatrix restriction(size_t q, size_t p) const;

  std::vector<std::pair<size_t, size_t>> covers() const;  // (p, q), p covered by q
  std::vector<size_t> minimal_points() const;
  std::vector<size_t> maximal_points() const;
  std::vector<size_t> down_set(size_t q) const;
  bool is_down_set(const std::vector<size_t>& pts) const;
  std::vector<std::vector<size_t>> components() const;

 private:
  MonoidedSpace() = default;
  std::vector<std::string> names_;
  std::vector<monoid::AffineMonoid> stalks_;
  std::vector<std::vector<char>> leq_;
  std::map<std::pair<size_t, size_t>, IntMatrix> maps_;  // (q, p) with p < q
};

/// An irreducible space rewritten in coordinates on the generic stalk's group
/// completion: every stalk becomes a submonoid of Z^rank and every
/// restriction map an inclusion.
struct IrreducibleModel {
  size_t generic = 0;
  Index rank = 0;
  std::vector<monoid::AffineMonoid> stalks;  // indexed like the space's points
};

/// Throws NotIrreducible unless the space has a unique minimal point.
IrreducibleModel irreducible_model(const MonoidedSpace& X);

/// Spec of an affine monoid: points are the primes, ordered by inclusion,
/// with localizations as stalks and identity restriction maps.
MonoidedSpace spec(const monoid::AffineMonoid& S);

/// Primes of S in the exact point order used by spec(S): generic point first.
std::vector<monoid::PrimeIdeal> spec_point_primes(const monoid::AffineMonoid& S);

/// Point set of the basic open D(f) = { p : f not in p } inside spec(S).
/// Throws NotAMember when f is not in S.
std::vector<size_t> spec_basic_open(const monoid::AffineMonoid& S, const IntVector& f);

/// The unique smallest open neighborhood: the down-set of the point.
std::vector<size_t> minimal_open(const MonoidedSpace& X, size_t p);

/// Sections over a down-set lying in one component with a unique minimal
/// point: the intersection of the maximal stalks inside the generic stalk.
/// Exact when the down-set has a greatest element or all involved stalks are
/// saturated; otherwise computed by bounded membership filtering.
monoid::AffineMonoid sections(const MonoidedSpace& X, const std::vector<size_t>& open_set);

/// Monoided space of a classic fan: points are the cones ordered by the face
/// relation, the stalk of sigma is dual(sigma) n M. Throws InvalidFan.
MonoidedSpace from_classic_fan(const polyhedral::ClassicFan& fan);

struct FanCertificate {
  struct PointData {
    size_t point;
    // tau in the minimal open of `point` -> the prime of stalk(point) whose
    // localization the restriction map identifies with stalk(tau)
    std::vector<std::pair<size_t, monoid::PrimeIdeal>> correspondence;
  };
  std::vector<PointData> points;
};

struct FanDecision {
  std::optional<FanCertificate> certificate;
  size_t failing_point = 0;
  std::string reason;  // empty on success
  bool ok() const { return certificate.has_value(); }
};

/// Every point's minimal open must look like Spec of its stalk: the points
/// below match the primes bijectively and each restriction map identifies the
/// stalk with the corresponding localization.
FanDecision is_fan(const MonoidedSpace& X);

/// Re-run the per-point checks against a stored certificate.
bool check_certificate(const MonoidedSpace& X, const FanCertificate& cert);

struct Identification {
  size_t piece_a = 0, point_a = 0;
  size_t piece_b = 0, point_b = 0;
  IntMatrix stalk_iso;  // square unimodular, maps stalk at a onto stalk at b
};

/// Disjoint union of the pieces with the identified points merged. The result
/// need not be a fan. Throws IncompatibleIdentification.
MonoidedSpace glue(const std::vector<MonoidedSpace>& pieces,
                   const std::vector<Identification>& ids);

/// Isomorphism of monoided spaces: a poset isomorphism with compatible stalk
/// isomorphisms commuting with the restriction maps. Components must have
/// unique minimal points.
bool iso_check(const MonoidedSpace& X, const MonoidedSpace& Y);

struct MonoidMorphismData {
  monoid::AffineMonoid source;
  monoid::AffineMonoid target;
  IntMatrix map;  // ambient lattice map
};

/// Local homomorphism test: non-units must map to non-units.
/// Throws IllFormedMorphism when the map does not send source into target.
bool is_local_hom(const MonoidMorphismData& phi);

struct PolytopeFaceSpace {
  std::vector<std::vector<Index>> faces;  // vertex index sets, (size, lex) order
  std::vector<std::vector<char>> leq;     // face poset, star-topology orientation
  MonoidedSpace fan_space;                // from_classic_fan(normal_fan(p))
  std::vector<size_t> to_fan_point;       // face index -> fan-space point
  bool order_iso = false;
};

/// Face poset of a polytope with the star topology, together with the order
/// isomorphism onto the specialization poset of its normal fan's space.
PolytopeFaceSpace polytope_face_space(const polyhedral::Polytope& p);

}  // namespace monofan::fanspace
